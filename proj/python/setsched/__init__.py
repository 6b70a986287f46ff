"""Parallel-machine scheduling with a shared pool of setup technicians."""

try:
    from . import _setsched as _impl  # installed wheel layout
except ImportError:  # build-tree layout: extension sits next to the package dir
    import _setsched as _impl

Instance = _impl.Instance
generate_instance = _impl.generate_instance
instance_from_json = _impl.instance_from_json
read_instance = _impl.read_instance
write_instance = _impl.write_instance
validate_instance = _impl.validate_instance
solve = _impl.solve
solve_subproblem = _impl.solve_subproblem
resource_free_value = _impl.resource_free_value
brute_force_optimum = _impl.brute_force_optimum
warm_start = _impl.warm_start
explore_neighbourhood = _impl.explore_neighbourhood

__version__ = _impl.__version__
__all__ = [
    "Instance",
    "generate_instance",
    "instance_from_json",
    "read_instance",
    "write_instance",
    "validate_instance",
    "solve",
    "solve_subproblem",
    "resource_free_value",
    "brute_force_optimum",
    "warm_start",
    "explore_neighbourhood",
]
