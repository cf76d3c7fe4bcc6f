"""
Settings Module - environment-driven defaults for the QFI toolkit
- Values come from the process environment or a local .env file
- Every numeric tolerance used across packages is defined here once
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# SLD / QFI tolerances
RANK_TOL = float(os.getenv("QFI_RANK_TOL", "1e-12"))
KERNEL_TOL = float(os.getenv("QFI_KERNEL_TOL", "1e-6"))

# Integrator defaults
DEFAULT_STEP = float(os.getenv("QFI_DEFAULT_STEP", "0.005"))
POSITIVITY_TOL = 1e-6

# Fock truncation
FOCK_N_MAX = int(os.getenv("QFI_FOCK_N_MAX", "40"))
LEAKAGE_TOL = float(os.getenv("QFI_LEAKAGE_TOL", "1e-8"))

# Bound optimizer
OPTIMIZER_MAX_ITER = int(os.getenv("QFI_OPTIMIZER_MAX_ITER", "2000"))

# Output / reproducibility
OUTPUT_DIR = os.getenv("QFI_OUTPUT_DIR", "output")
DEFAULT_SEED = int(os.getenv("QFI_SEED", "1234"))
LOG_LEVEL = os.getenv("QFI_LOG_LEVEL", "INFO")
