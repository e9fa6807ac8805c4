import hypothesis

# Derandomized so CI runs are byte-reproducible; no deadline because exact
# Fraction arithmetic has occasional slow examples that are not bugs.
hypothesis.settings.register_profile(
    "kubota",
    derandomize=True,
    deadline=None,
    suppress_health_check=[hypothesis.HealthCheck.too_slow],
)
hypothesis.settings.load_profile("kubota")
