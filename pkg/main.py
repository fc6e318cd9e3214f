from zolldisks.moduli.moduli_space import ModuliSpace
from zolldisks.default_config import DEFAULT_CONFIG
from zolldisks.dataflows.spec_files import parse_spec
from zolldisks.geometry.projective import P1Point

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Create a custom config
config = DEFAULT_CONFIG.copy()
config["K"] = 32  # Fourier truncation of each disk
config["workers"] = 1
config["geodesic_mode"] = "exact"  # Options: exact, interpolated

# A small non-conformal deformation of the standard RP^2
spec = parse_spec(
    {
        "version": 1,
        "degree": 3,
        "terms": [
            {"powers": [1, 1, 0], "coeff": [0.1, 0.0, 0.05]},
            {"powers": [0, 1, 2], "coeff": [0.0, 0.08, 0.0]},
            {"powers": [2, 0, 0], "coeff": [0.0, 0.0, 0.1]},
            {"powers": [0, 0, 1], "coeff": [0.05, -0.07, 0.0]},
        ],
        "scale": 1.0,
    }
)

space = ModuliSpace(spec, config=config, progress=True)
print(space.certify().summary())

# One disk and its invariants
disk = space.solve(P1Point([1, 0]))
print(space.diagnose(disk).summary())

# The moduli grid and one geodesic
space.sweep(n=100, seed=0)
geodesic = space.trace(P1Point([1, 1j]))
print(f"closed={geodesic.closed} arclength={geodesic.arclength:.4f}")

print(space.lagrangian(m=200).summary())
space.save(config["results_dir"])
