import os
from dotenv import load_dotenv

load_dotenv()

_PACKAGE_DIR = os.path.dirname(os.path.abspath(__file__))


class Config:
    # Rewriting
    REWRITE_DEPTH_FACTOR = int(os.getenv("HLORENTZ_REWRITE_DEPTH_FACTOR", "10"))

    # Plane waves and the Laurent representation
    PLANEWAVE_ORDER = int(os.getenv("HLORENTZ_PLANEWAVE_ORDER", "4"))
    REPN_WINDOW = int(os.getenv("HLORENTZ_REPN_WINDOW", "8"))
    REPN_STABILITY_WINDOWS = (6, 8)

    # Golden tables (transcribed 16x16 exchange matrices)
    APPENDIX_DATA_PATH = os.getenv(
        "HLORENTZ_APPENDIX_PATH", os.path.join(_PACKAGE_DIR, "data")
    )
    APPENDIX_FILES = {
        1: "exchange_j1.txt",
        2: "exchange_j2.txt",
    }

    # Runtime
    LOG_LEVEL = os.getenv("HLORENTZ_LOG_LEVEL", "WARNING")
    JOBS = int(os.getenv("HLORENTZ_JOBS", "1"))


config = Config()
