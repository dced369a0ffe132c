# routes/apply.py
# "apply": morph a mesh with node displacements through its stored W block

from ..services.morph import morph_mesh
from ..services.storage import load_parametrization
from ..sources.mesh import read_mesh, write_mesh
from ..utils.helpers import check_inputs, read_displacements

NAME = "apply"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="displace a mesh with node displacements")
    parser.add_argument("--param", required=True, help="parametrization file (.mprm)")
    parser.add_argument("--disp", required=True, help="CSV of node displacements, x,y,z per node")
    parser.add_argument("--mesh-id", required=True, help="which stored W block to use")
    parser.add_argument("--mesh", required=True, help="mesh to morph (same points as the block)")
    parser.add_argument("--out", required=True, help="morphed mesh, written in the input's format")
    parser.set_defaults(handler=run, validate=validate)
    return parser


def validate(args):
    check_inputs(files=[args.param, args.disp, args.mesh], outputs=[args.out])


def run(args):
    param = load_parametrization(args.param)
    param.block(args.mesh_id)
    d = read_displacements(args.disp, param.node_count)
    mesh = read_mesh(args.mesh)

    morphed = morph_mesh(param, args.mesh_id, mesh, d)
    write_mesh(morphed, args.out, fmt=mesh.format)
    print(f"morphed {morphed.point_count} points of {args.mesh_id} -> {args.out}")
    return 0
