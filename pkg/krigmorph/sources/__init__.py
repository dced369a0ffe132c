# sources package
# Readers and writers for the supported mesh file formats

from .mesh import Mesh, MeshFormat, detect_format, displace_points, read_mesh, write_mesh

__all__ = ["Mesh", "MeshFormat", "detect_format", "displace_points", "read_mesh", "write_mesh"]
