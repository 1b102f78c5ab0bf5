"""
minnaert_core
=============

单个球形纳米气泡的声-弹散射模态近似：

- specfun / spectra：球 Bessel 函数与单位球面上层势的谱
- medium / resonance：无量纲介质、模态符号与 Minnaert 共振
- sphere / fields：球谐求积、Kupradze 矩阵与模态散射场
- quad_oracle：直接面求积对照
- timedomain：截断逆 Fourier 变换与留数近似
"""
