"""Finite order-theoretic structures and the gallery of named adjunctions."""
from .gallery import (  # noqa: F401
    INSTANCE_NAMES,
    Concrete,
    Expectations,
    InstanceBundle,
    UnknownInstance,
    build_instance,
    preorder_as_category,
    run_gallery,
    verify_instance,
)
from .structures import *  # noqa: F401,F403
