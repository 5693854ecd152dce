import hypothesis

hypothesis.settings.register_profile(
    "lieinv",
    derandomize=True,
    max_examples=60,
    deadline=None,
)
hypothesis.settings.load_profile("lieinv")
