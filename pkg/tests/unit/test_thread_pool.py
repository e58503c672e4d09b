"""Tests for the shared worker pool."""

import threading

from na_bounds.utils import SharedThreadPool, map_ordered, shutdown_shared_pool


class TestMapOrdered:
    def teardown_method(self):
        shutdown_shared_pool()

    def test_inline_with_one_worker(self):
        names = map_ordered(lambda _: threading.current_thread().name, range(3), workers=1)
        assert names == [threading.current_thread().name] * 3

    def test_results_in_input_order(self):
        assert map_ordered(lambda i: i * i, range(50), workers=4) == [i * i for i in range(50)]

    def test_pool_is_shared_and_resized(self):
        first = SharedThreadPool.get_executor(2)
        assert SharedThreadPool.get_executor(2) is first
        assert SharedThreadPool.get_executor(3) is not first
        assert SharedThreadPool() is SharedThreadPool()

    def test_shutdown_allows_reuse(self):
        map_ordered(str, range(4), workers=2)
        shutdown_shared_pool()
        assert map_ordered(str, range(4), workers=2) == ["0", "1", "2", "3"]

    def test_resize_pool_replaces_executor(self):
        first = SharedThreadPool.get_executor(2)
        resized = SharedThreadPool.resize_pool(2)
        assert resized is not first
        assert SharedThreadPool.get_executor(2) is resized

    def test_concurrent_callers_with_different_sizes(self):
        errors = []
        results = {}

        def caller(workers: int) -> None:
            try:
                for _ in range(20):
                    results[workers] = map_ordered(lambda i: i + workers, range(16), workers=workers)
            except Exception as e:
                errors.append(e)

        threads = [threading.Thread(target=caller, args=(w,)) for w in (2, 3, 4, 5)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        assert not errors
        for workers, values in results.items():
            assert values == [i + workers for i in range(16)]
