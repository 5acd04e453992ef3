import sys
from pathlib import Path

# make oracles.py importable no matter where pytest is invoked from
sys.path.insert(0, str(Path(__file__).parent))
