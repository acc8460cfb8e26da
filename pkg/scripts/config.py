# ========================= caps ==========================
# exceeding any cap is an input error, never a silent truncation
caps = dict(
    vertices=10 ** 6,  # vertices of a constructed graph
    subsets=10 ** 7,  # k-subsets enumerated by brute-force oracles
    tuple_space=10 ** 5,  # |B|^c for the product construction
    family_entries=5 * 10 ** 7,  # |family| * n for color-coding families
)

# ========================= solver ==========================
solver = dict(
    mode="exact_bb",  # exact_bb | exact_enum | greedy
    max_nodes=5_000_000,
    time_cap=120.0,  # seconds
)

# ========================= generation ==========================
synth = dict(
    edge_prob=0.5,
    left_pad=0,  # with both pads 0 the YES graph is exactly K_{s,d}
    right_pad=0,
    no_retries=64,
)

gap_demo = dict(
    pairs=10,
    c=None,  # also run the product construction with this c
    delta_dup=1,
)

family = dict(samples=10000)  # sampling fallback when C(n, k) exceeds caps.subsets

# ========================= others ==========================
output_dir = "outputs/tmp"
seed = 0
jobs = 1
log = dict(color=True, level="INFO")
log_freq = 1
