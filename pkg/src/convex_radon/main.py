from __future__ import annotations

from fastapi import FastAPI

from convex_radon.api.v1 import catalog as catalog_routes
from convex_radon.api.v1 import runs as run_routes

app = FastAPI(
    title="Convex Radon Bench",
    version="0.1.0",
)


@app.get("/health", tags=["system"])
def health_check() -> dict[str, str]:
    """Simple health endpoint to verify the service is running."""
    return {"status": "ok"}


# Routers
app.include_router(catalog_routes.router, prefix="/catalog", tags=["catalog"])
app.include_router(run_routes.router, prefix="/runs", tags=["runs"])
