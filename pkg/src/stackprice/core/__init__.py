from .exact import INF, ExactNumber, InfinityArithmeticError, format_number, harmonic, parse_number, to_exact
from .io import (
    instance_digest,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    parse_instance,
    save_instance,
    serialize_instance,
)
from .model import (
    EDGE_GAME,
    FIXED,
    PRICEABLE,
    SHORTEST_PATH,
    SPANNING_TREE,
    VERTEX_COVER,
    VERTEX_GAME,
    Edge,
    FollowerSpec,
    InfeasibleFollowerError,
    Instance,
    InstanceError,
    Item,
    PricingError,
    UnsupportedError,
    fixed_part,
    uniform_prices,
    weight_and_revenue,
)
from .validate import ValidationReport, validate
