import os
import sys
import multiprocessing

from .main import main

if __name__ == "__main__":
    if os.name == "nt":
        multiprocessing.freeze_support()
    sys.exit(main())
