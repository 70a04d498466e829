"""Infrastructure package: file persistence and model backends."""
