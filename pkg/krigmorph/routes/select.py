# routes/select.py
# "select": choose morphing nodes on a surface and save the parametrization

import logging
from pathlib import Path

from ..config import PARAM_SUFFIX
from ..errors import ConfigurationError
from ..services.geometry import load_fixed_geometry
from ..services.kernel import KernelFamily, KernelSpec
from ..services.parametrization import build_parametrization
from ..services.selection import StopCriteria
from ..services.settings import get_chunk_size, get_max_workers
from ..services.storage import save_parametrization
from ..sources.mesh import read_mesh
from ..utils.helpers import check_inputs, format_trace

logger = logging.getLogger(__name__)

NAME = "select"


def register(subparsers):
    parser = subparsers.add_parser(NAME, help="select morphing nodes and build weight matrices")
    parser.add_argument("--surface", required=True, help="surface mesh providing candidate nodes")
    parser.add_argument(
        "--mesh", action="append", default=[],
        help="additional mesh to build W for (repeatable, e.g. the volume mesh)",
    )
    parser.add_argument("--kernel", required=True, choices=[f.value for f in KernelFamily])
    parser.add_argument("--theta", required=True, type=float, help="influence radius, in mesh units")
    parser.add_argument("--max-nodes", type=int, help="stop after this many nodes")
    parser.add_argument("--variance-tol", type=float, help="stop once the max variance is below this")
    parser.add_argument("--fixed", help="JSON file with the fixed geometry primitives")
    parser.add_argument("--chunk", type=int, help="columns per W block (default KRIGMORPH_CHUNK)")
    parser.add_argument("--workers", type=int, help="threads for W assembly (default KRIGMORPH_WORKERS)")
    parser.add_argument("--out", required=True, help="parametrization file to write (.mprm)")
    parser.set_defaults(handler=run, validate=validate)
    return parser


def validate(args):
    if not args.theta > 0:
        raise ConfigurationError("theta must be positive")
    if args.max_nodes is None and args.variance_tol is None:
        raise ConfigurationError("set --max-nodes, --variance-tol, or both")
    if args.max_nodes is not None and args.max_nodes < 1:
        raise ConfigurationError("max-nodes must be positive")
    if args.variance_tol is not None:
        if args.variance_tol < 0:
            raise ConfigurationError("variance-tol must be non-negative")
        if args.variance_tol >= 1.0:
            # No posterior variance exceeds kappa(0) = 1, so nothing would be selected
            raise ConfigurationError("variance-tol must be below kappa(0) = 1")
    if args.chunk is None:
        args.chunk = get_chunk_size()
    if args.chunk < 1:
        raise ConfigurationError("chunk must be positive")
    if args.workers is None:
        args.workers = get_max_workers()
    if args.workers < 1:
        raise ConfigurationError("workers must be positive")
    check_inputs(files=[args.surface, args.fixed, *args.mesh], outputs=[args.out])
    if Path(args.out).suffix != PARAM_SUFFIX:
        logger.warning("Parametrization %s does not end in %s", args.out, PARAM_SUFFIX)


def run(args):
    fixed = load_fixed_geometry(args.fixed) if args.fixed else None
    kernel = KernelSpec(args.kernel, args.theta, fixed)
    stop = StopCriteria(max_nodes=args.max_nodes, variance_tol=args.variance_tol)

    surface = read_mesh(args.surface)
    meshes = [read_mesh(path) for path in args.mesh]

    param, state = build_parametrization(
        kernel, surface, meshes, stop, args.chunk, max_workers=args.workers
    )
    save_parametrization(param, args.out)

    print(format_trace(param.selection_trace, param.nodes))
    print(f"nodes: {param.node_count}")
    print(f"max residual variance: {state.max_residual:.8f}")
    for mesh_id, W in param.weights.items():
        print(f"mesh {mesh_id}: {W.shape[1]} points")
    return 0
