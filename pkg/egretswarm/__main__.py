"""egretswarm's main entry point."""
import sys
from egretswarm.cmdline import main
sys.exit(main())
