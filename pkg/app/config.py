import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_JOBS = int(os.getenv("ECTORSION_JOBS", "1"))
LOG_LEVEL = os.getenv("ECTORSION_LOG_LEVEL", "WARNING").upper()
VERIFY_BOUND = int(os.getenv("ECTORSION_VERIFY_BOUND", "100"))
ENUM_BOUND = int(os.getenv("ECTORSION_ENUM_BOUND", "100"))
# s-values handed to one worker task
CHUNK_SIZE = int(os.getenv("ECTORSION_CHUNK_SIZE", "64"))

SCHEMA_VERSION = "1.0"
