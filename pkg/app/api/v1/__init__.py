# Versioned routers: bounds, transmitters, scenarios
