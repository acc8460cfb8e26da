from .output import ReductionOutput
from .params import Params32, ParamsMain, derive_params32, derive_params_main, derive_params_superconstant
from .product_bound import ProductBoundVerdict, exhaust_product_bound, product_bound_check
from .reduce32 import build_g_prime, extract_yes_witness32
from .reducemain import TupleVertexSpace, build_g_c, extract_yes_witness_main
