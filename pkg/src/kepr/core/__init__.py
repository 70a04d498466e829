"""Pipeline stages: keywords, rewriting, retrieval, generation, dedup, ranking, evaluation.

Import stages from their modules (``kepr.core.dedup`` etc.); this package
stays empty so backends can depend on the lemmatizer without cycles.
"""
