# Python 3.10.11
# Creado: 15/10/2026

import sys

from groklab.cli import GrokLabCLI


def main():
    sys.exit(GrokLabCLI().parse(sys.argv[1:]))


if __name__ == "__main__":
    main()
