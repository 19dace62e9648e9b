import sys

from cli import run_cli
from utils import MemoryManager


def main():
    MemoryManager.log_memory_usage("start")
    code = run_cli()
    MemoryManager.log_memory_usage("done")
    return code


if __name__ == "__main__":
    sys.exit(main())
