from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import logging
from contextlib import asynccontextmanager

from app.harness import max_qubits
from .routers import hamiltonian_router, lattice_router, vqe_router

# 配置日志
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger("api")


# 定义生命周期管理
@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"API服务器启动, 量子比特上限 {max_qubits()}")
    yield
    logger.info("API服务器关闭")


# 创建FastAPI应用
app = FastAPI(
    title="SVP-VQE API",
    description="格基生成、约化、哈密顿量构造与 VQE 求解",
    version="1.0.0",
    lifespan=lifespan,
)

# 启用CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(lattice_router)
app.include_router(hamiltonian_router)
app.include_router(vqe_router)


# 健康检查端点
@app.get("/health")
async def health_check():
    """API服务器健康检查"""
    return {
        "status": "healthy",
        "version": "1.0.0"
    }
