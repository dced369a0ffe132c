# krigmorph package
# Kriging-based morphing parametrization for shape optimization meshes

__version__ = "1.0.0"
