"""Cayley Census 主入口"""
import logging
import sys

from src.config import ensure_output_dirs, settings
from src.cli import run

logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger(__name__)


def main() -> None:
    ensure_output_dirs()
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
