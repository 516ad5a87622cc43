import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from hlorentz import __version__
from hlorentz.api.routes import router
from hlorentz.config import config

logging.basicConfig(level=getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING))

app = FastAPI(
    title="hlorentz",
    description="Exact verification of the h-deformed Lorentz and Minkowski algebras",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include API routes
app.include_router(router, prefix="/api")


@app.get("/")
async def root():
    return {
        "message": "hlorentz verification API",
        "status": "running",
        "docs": "/docs",
    }


@app.get("/health")
async def health():
    return {"status": "healthy"}
