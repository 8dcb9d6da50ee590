from .enumerate import DEFAULT_LIMIT, OracleLimitError, enumerate_feasible
from .optimum import DEFAULT_TUPLE_LIMIT, TargetPricing, exact_optimum, optimal_prices_for_targets, target_lp
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram, LPResult, lp_solve
