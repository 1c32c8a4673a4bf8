"""Natural capital accounts: hydrology, sediment and carbon services, valuation and statements."""

from ._natcap import (
    Error,
    annuity_factor,
    carbon_stock_value,
    fill_pits,
    flow_accumulation,
    flow_direction_d8,
    npv_asset_value,
    route_sediment,
    run,
    config_to_ini,
    __version__,
)

__all__ = [
    "Error",
    "annuity_factor",
    "carbon_stock_value",
    "fill_pits",
    "flow_accumulation",
    "flow_direction_d8",
    "npv_asset_value",
    "route_sediment",
    "run",
    "config_to_ini",
    "__version__",
]
