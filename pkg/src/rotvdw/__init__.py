"""van der Waals shifts of rotational levels of polar diatomic molecules near gently curved dielectric surfaces."""

from .greens import SurfaceGeometry
from .materials import Material
from .rotor import AzimuthalState, Molecule, ParityState

__all__ = ["AzimuthalState", "Material", "Molecule", "ParityState", "SurfaceGeometry"]
__version__ = "0.1.0"
