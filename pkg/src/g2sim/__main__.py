import sys

from g2sim.cli import main

sys.exit(main())
