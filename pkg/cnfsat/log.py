"""Package logger. Handlers are installed by :py:func:`cnfsat.main.main`."""
import logging

logger = logging.getLogger("cnfsat")
