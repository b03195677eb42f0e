import sys

from slownim.cli import main

sys.exit(main())
