# routes/fit.py
# "fit": least-squares node displacements reproducing prescribed point motions

import numpy as np

from ..services.morph import displacement_at
from ..services.storage import load_parametrization
from ..services.weights import fit_displacements
from ..utils.helpers import check_inputs, read_targets, write_displacements

NAME = "fit"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="fit node displacements to prescribed motions")
    parser.add_argument("--param", required=True, help="parametrization file (.mprm)")
    parser.add_argument("--targets", required=True, help="CSV rows x,y,z,dx,dy,dz")
    parser.add_argument("--out", required=True, help="CSV of node displacements for 'apply'")
    parser.set_defaults(handler=run, validate=validate)
    return parser


def validate(args):
    check_inputs(files=[args.param, args.targets], outputs=[args.out])


def run(args):
    param = load_parametrization(args.param)
    points, values = read_targets(args.targets)
    d = fit_displacements(param.kernel, param.nodes, points, values, factor=param.chol)
    write_displacements(args.out, d)

    residual = displacement_at(param.kernel, param.nodes, d, points, factor=param.chol) - values
    print(f"fitted {param.node_count} nodes to {len(points)} targets")
    print(f"max target residual: {np.max(np.abs(residual)):.3e}")
    return 0
