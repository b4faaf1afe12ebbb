from hypothesis import settings

# First calls into jitted code pay compilation cost; per-example deadlines
# would misfire on that.
settings.register_profile("no-deadline", deadline=None)
settings.load_profile("no-deadline")
