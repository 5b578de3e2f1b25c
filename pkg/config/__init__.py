"""Configuration module for the halfplane containment toolkit."""
from .settings import Settings, get_settings
from .constants import *
