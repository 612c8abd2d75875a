import asyncio
import logging
from contextlib import asynccontextmanager
from typing import Optional

# Load environment variables from .env file
from dotenv import load_dotenv
load_dotenv()

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel

from config import DEFAULT_SUITE_MAX, LOG_FORMAT, LOG_LEVEL, MAX_CONCURRENT_JOBS, SERVICE_HOST, SERVICE_PORT
from src.algebra.algebra_config import AlgebraConfig
from src.algebra.serialization import ExtensionModel
from src.errors import (
    InternalInconsistencyError,
    InvalidArgumentError,
    ResourceLimitError,
    SpecParseError,
    UnknownSuiteError,
)
from src.extensions.extensions import load_extension
from src.suites.reports import build_baer_report, build_h2_report, build_torsors_report
from src.suites.runner import run_suite
from src.suites.specs import parse_abelian_group, parse_action_spec, parse_finite_group

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format=LOG_FORMAT
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    # Startup
    logger.info("Starting Opfibration Workbench service")
    try:
        AlgebraConfig.validate_config()
    except ValueError as e:
        logger.error(f"Invalid algebra configuration: {e}")
        raise

    yield

    # Shutdown
    logger.info("Shutting down Opfibration Workbench service")


app = FastAPI(title="Opfibration Workbench", lifespan=lifespan)


class BaerRequest(BaseModel):
    first: ExtensionModel
    second: ExtensionModel


def _http_error(e: Exception) -> HTTPException:
    """Map workbench errors onto HTTP status codes"""
    if isinstance(e, UnknownSuiteError):
        return HTTPException(status_code=404, detail=str(e))
    if isinstance(e, (SpecParseError, InvalidArgumentError)):
        return HTTPException(status_code=400, detail=str(e))
    if isinstance(e, ResourceLimitError):
        return HTTPException(status_code=413, detail=str(e))
    logger.error(f"Internal inconsistency: {e}")
    return HTTPException(status_code=500, detail=str(e))


WORKBENCH_ERRORS = (InvalidArgumentError, ResourceLimitError, InternalInconsistencyError)


@app.get("/health")
async def health():
    return {"status": "ok"}


@app.get("/api/h2")
async def h2_report(
    C: str = Query("Z1", description="acting group spec"),
    B: str = Query(..., description="abelian group spec"),
    action: str = Query("trivial", description="trivial or inv"),
    budget: Optional[int] = Query(None, ge=1),
):
    if action.startswith("@"):
        raise HTTPException(status_code=400, detail="file actions are only available on the command line")
    try:
        module = parse_action_spec(parse_finite_group(C), parse_abelian_group(B), action)
        report = await asyncio.to_thread(build_h2_report, module, action, budget)
        return report.to_dict()
    except WORKBENCH_ERRORS as e:
        raise _http_error(e)


@app.get("/api/torsors")
async def torsors_report(
    B: str = Query(..., description="group spec"),
    budget: Optional[int] = Query(None, ge=1),
):
    if B.startswith("@"):
        raise HTTPException(status_code=400, detail="file specs are only available on the command line")
    try:
        report = await asyncio.to_thread(build_torsors_report, parse_finite_group(B), budget)
        return report.to_dict()
    except WORKBENCH_ERRORS as e:
        raise _http_error(e)


@app.get("/api/verify/{suite}")
async def verify_suite(suite: str, max: int = Query(DEFAULT_SUITE_MAX, ge=1)):
    try:
        report = await run_suite(suite, max, MAX_CONCURRENT_JOBS)
    except WORKBENCH_ERRORS as e:
        raise _http_error(e)
    return report.to_dict()


@app.post("/api/baer")
async def baer(request: BaerRequest):
    try:
        first = load_extension(request.first.model_dump())
        second = load_extension(request.second.model_dump())
        report = await asyncio.to_thread(build_baer_report, first, second)
        return report.to_dict()
    except WORKBENCH_ERRORS as e:
        raise _http_error(e)


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("app:app", host=SERVICE_HOST, port=SERVICE_PORT, reload=False)
