import sys

from mvfix.cli import main

sys.exit(main())
