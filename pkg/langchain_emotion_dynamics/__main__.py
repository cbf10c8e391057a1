"""Allow ``python -m langchain_emotion_dynamics``."""

import sys

from .cli import main

sys.exit(main())
