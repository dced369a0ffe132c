# routes/info.py
# "info": summarize a parametrization file

from ..services.storage import load_parametrization
from ..utils.helpers import check_inputs

NAME = "info"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="print a summary of a parametrization file")
    parser.add_argument("--param", required=True, help="parametrization file (.mprm)")
    parser.set_defaults(handler=run, validate=validate)
    return parser


def validate(args):
    check_inputs(files=[args.param])


def run(args):
    param = load_parametrization(args.param)
    kernel = param.kernel
    fixed = kernel.fixed.primitives if kernel.fixed is not None else ()

    print(f"kernel: {kernel.family.value}")
    print(f"theta: {kernel.theta!r}")
    print(f"fixed primitives: {len(fixed)}")
    print(f"nodes: {param.node_count}")
    for mesh_id, W in param.weights.items():
        print(f"mesh {mesh_id}: {W.shape[1]} points")
    print(f"weight payload bytes: {param.payload_bytes}")
    print(f"jitter: {param.chol.jitter!r}")
    final = param.final_variance
    print(f"final selection variance: {final!r}" if final is not None else "final selection variance: n/a")
    return 0
