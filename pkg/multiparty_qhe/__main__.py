import sys

from multiparty_qhe.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
