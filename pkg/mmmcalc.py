#!/usr/bin/env python3
"""
mmm_calc command-line entry point
Newton polynomials, MMM characteristic numbers and Atiyah-Kodaira invariants
"""

import sys
import logging

from dotenv import load_dotenv

from mmm_calc.cli import main
from mmm_calc.config import Config, ConfigValidationError

# Load environment variables
load_dotenv()

# Configure logging
try:
    level = Config().get_log_level()
except ConfigValidationError as e:
    print(f"error: {e}", file=sys.stderr)
    sys.exit(2)

logging.basicConfig(
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    level=level,
    stream=sys.stderr
)
logger = logging.getLogger(__name__)

if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        sys.exit(130)
