# app/main.py
import logging

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app import __version__
from app.api.graphs import router as graphs_router
from app.api.sweeps import router as sweeps_router
from app.config import get_settings
from app.utils.errors import CapExceededError, DimforceError
from app.utils.logging import configure_logging

settings = get_settings()

configure_logging(settings.LOG_LEVEL)
logger = logging.getLogger("dimforce.api")

app = FastAPI(
    title="dimforce",
    version=__version__,
    description="Metric dimension, zero forcing number and path cover number of small graphs",
)

# CORS - relaxed for dev
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"] if settings.ENV == "dev" else [],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(graphs_router, prefix="/api/graphs", tags=["graphs"])
app.include_router(sweeps_router, prefix="/api/sweeps", tags=["sweeps"])


@app.exception_handler(DimforceError)
async def dimforce_error(request: Request, exc: DimforceError):
    status = 413 if isinstance(exc, CapExceededError) else 422
    logger.info("%s %s -> %d: %s", request.method, request.url.path, status, exc)
    return JSONResponse({"detail": str(exc), "error": type(exc).__name__}, status_code=status)


@app.get("/health", tags=["health"])
async def health():
    settings = get_settings()
    caps = settings.caps()
    return JSONResponse({
        "status": "ok",
        "service": "dimforce",
        "env": settings.ENV,
        "brute_force_cap": caps.brute_force,
        "path_cover_cap": caps.path_cover,
    })


@app.on_event("startup")
async def on_startup():
    logger.info("Starting dimforce API (env=%s)", settings.ENV)


# If run directly: start uvicorn programmatically (handy for `python -m app.main`)
if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        "app.main:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        reload=settings.ENV == "dev",
        log_level=settings.LOG_LEVEL.lower(),
    )
