import os
import logging

from humanfriendly import format_size

from config import runtime_config


class MemoryManager:
    psutil_available = False
    try:
        import psutil
        psutil_available = True
    except ImportError:
        logging.info("psutil library not found. Memory monitoring will be disabled.")

    @staticmethod
    def get_memory_usage():
        if not MemoryManager.psutil_available:
            return {"rss": 0, "percent": 0, "available": 0, "total": 0}

        process = MemoryManager.psutil.Process(os.getpid())
        virtual_mem = MemoryManager.psutil.virtual_memory()
        return {
            "rss": process.memory_info().rss,
            "percent": process.memory_percent(),
            "available": virtual_mem.available,
            "total": virtual_mem.total,
        }

    @staticmethod
    def log_memory_usage(context=""):
        if not MemoryManager.psutil_available: return
        mem = MemoryManager.get_memory_usage()
        logging.info(f"Memory {context}: RSS={format_size(mem['rss'])}, %Proc={mem['percent']:.1f}%, SysAvail={format_size(mem['available'])}")

    @staticmethod
    def check_dense_dim(dim: int, context: str = "", cap=None):
        """Raise CapExceededError when a dense allocation of size dim x dim would exceed the configured cap."""
        from core.errors import CapExceededError

        cap = runtime_config.max_dense_dim if cap is None else cap
        if dim > cap:
            raise CapExceededError(f"{context or 'dense operator'}: dimension {dim} exceeds cap {cap}")
        nbytes = 16 * dim * dim
        if nbytes > 64 * 1024 * 1024:
            logging.info(f"Allocating {format_size(nbytes)} for {context or 'dense operator'}")
            MemoryManager.log_memory_usage(context)
        return True
