"""
pytest 接入
===========

测试类继承 tests.core.BaseTest（自带 __init__，pytest 默认不收集）。
这里把每个 BaseTest 子类的 test_* 方法登记为 pytest 用例，语义与 TestRunner 一致：
每个类实例化一次、setup_class 执行一次，每个用例前后调用 setup / teardown。
"""

import pytest

from tests.core.base import BaseTest


class BaseTestItem(pytest.Item):
    def __init__(self, *, method_name, **kwargs):
        super().__init__(**kwargs)
        self.method_name = method_name

    def runtest(self):
        instance = self.parent.prepared_instance()
        instance.current_test = self.method_name
        instance.setup()
        try:
            getattr(instance, self.method_name)()
        finally:
            instance.teardown()

    def repr_failure(self, excinfo):
        if isinstance(excinfo.value, AssertionError):
            return f"{self.parent.name}.{self.method_name}: {excinfo.value}"
        return super().repr_failure(excinfo)

    def reportinfo(self):
        return self.path, None, f"{self.parent.name}.{self.method_name}"


class BaseTestClass(pytest.Collector):
    def __init__(self, *, test_cls, **kwargs):
        super().__init__(**kwargs)
        self.cls = test_cls
        self._instance = None
        self._setup_error = None

    def prepared_instance(self):
        if self._instance is None and self._setup_error is None:
            instance = self.cls()
            try:
                instance.setup_class()
            except Exception as e:
                self._setup_error = e
            else:
                self._instance = instance
        if self._setup_error is not None:
            raise RuntimeError(f"setup_class 失败: {type(self._setup_error).__name__}: "
                               f"{self._setup_error}") from self._setup_error
        return self._instance

    def collect(self):
        for name in sorted(dir(self.cls)):
            if name.startswith("test_") and callable(getattr(self.cls, name)):
                yield BaseTestItem.from_parent(self, name=name, method_name=name)


def pytest_pycollect_makeitem(collector, name, obj):
    if (isinstance(obj, type) and issubclass(obj, BaseTest) and obj is not BaseTest
            and isinstance(collector, pytest.Module)
            and obj.__module__ == collector.obj.__name__):
        return BaseTestClass.from_parent(collector, name=name, test_cls=obj)
    return None
