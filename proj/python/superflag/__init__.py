"""Global vector fields on gl(m|n) flag supermanifolds."""

from ._superflag import dim, functions, kernel, lift, project, section, suites, verify, weyl_dim

__all__ = ["dim", "functions", "kernel", "lift", "project", "section", "suites", "verify", "weyl_dim"]
