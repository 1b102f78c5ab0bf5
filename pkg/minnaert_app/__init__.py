"""配置加载、子命令编排与结果输出"""
