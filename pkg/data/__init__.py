"""Data module: domain models, documents and caching."""
