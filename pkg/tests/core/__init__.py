"""测试框架核心模块"""
from .base import BaseTest
from .runner import TestRunner
from .reporter import TestReporter

__all__ = ["BaseTest", "TestRunner", "TestReporter"]
