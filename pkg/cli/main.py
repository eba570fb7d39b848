import sys
from typing import List, Optional

from dotenv import load_dotenv


def main(argv: Optional[List[str]] = None) -> int:
    # module-level settings are read from the environment at import time
    load_dotenv()
    from cli.commands import run

    return run(argv)


def start():
    sys.exit(main())


if __name__ == "__main__":
    start()
