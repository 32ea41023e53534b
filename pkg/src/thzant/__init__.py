"""THz graphene patch antenna + PRS cavity design and FDTD analysis toolkit."""

__version__ = "0.1.0"
