import hypothesis

# numba JIT compilation on first kernel use can blow per-example deadlines
hypothesis.settings.register_profile(
    "auxbounds", deadline=None, max_examples=60, derandomize=True
)
hypothesis.settings.load_profile("auxbounds")
