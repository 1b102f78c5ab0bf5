#!/usr/bin/env python3
"""
命令行启动入口
"""
import os
import sys

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from minnaert_app.cli import main

if __name__ == "__main__":
    sys.exit(main())
