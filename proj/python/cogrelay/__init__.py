# SPDX-License-Identifier: Apache-2.0
"""Outage analysis of an underlay cognitive dual-hop DF relay.

Thin wrapper over the C++ core: closed-form and quadrature evaluation of
the per-hop and end-to-end outage probability with TAS/MRC or TAS/SC
combining and transceiver hardware impairments, high-power asymptotics,
and a reproducible Monte-Carlo channel simulator.
"""

from cogrelay._core import *  # noqa: F401,F403
from cogrelay._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
