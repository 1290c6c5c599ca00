import sys

from app.cli import main

# python main.py <子命令> 与 svp-vqe <子命令> 等价
if __name__ == "__main__":
    sys.exit(main())
