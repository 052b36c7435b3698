import sys

from rumid.cli import main

sys.exit(main())
