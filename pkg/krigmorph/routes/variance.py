# routes/variance.py
# "variance": export the posterior variance field as a VTK point scalar

from pathlib import Path

import numpy as np

from ..errors import ConfigurationError
from ..services.selection import posterior_variance
from ..services.settings import get_chunk_size
from ..services.storage import load_parametrization
from ..sources.mesh import MeshFormat, detect_format, read_mesh, write_mesh
from ..utils.helpers import check_inputs

NAME = "variance"
FIELD = "variance"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="write the posterior variance at every mesh point")
    parser.add_argument("--param", required=True, help="parametrization file (.mprm)")
    parser.add_argument("--mesh", required=True, help="mesh to evaluate on")
    parser.add_argument("--out", required=True, help="VTK file with a 'variance' point field")
    parser.set_defaults(handler=run, validate=validate)
    return parser


def validate(args):
    if detect_format(Path(args.out)) is not MeshFormat.VTK:
        raise ConfigurationError("variance output must be a .vtk file (other formats carry no fields)")
    check_inputs(files=[args.param, args.mesh], outputs=[args.out])


def run(args):
    param = load_parametrization(args.param)
    mesh = read_mesh(args.mesh)
    variance = posterior_variance(
        param.kernel, param.nodes, mesh.points, factor=param.chol, chunk=get_chunk_size()
    )
    write_mesh(mesh.with_field(FIELD, variance), args.out, fmt=MeshFormat.VTK)
    print(f"variance over {mesh.point_count} points: min {np.min(variance):.8f}, max {np.max(variance):.8f}")
    return 0
