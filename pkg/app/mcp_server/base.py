import logging
from typing import Callable, Dict, Tuple

from fastmcp import FastMCP

from app.errors import ParameterError

logger = logging.getLogger("mcp_server")

TRANSPORTS = ("sse", "stdio")


class BaseMCPServer:
    """MCP服务器基类

    子类在 TOOLS 中列出工具函数，在 RESOURCES 中给出 URI → 资源函数，
    构造时统一注册到 FastMCP 上。
    """

    TOOLS: Tuple[Callable, ...] = ()
    RESOURCES: Dict[str, Callable] = {}

    def __init__(self, name: str):
        self.name = name
        self.mcp = FastMCP(name)
        self._register_tools()
        self._register_resources()
        logger.debug(f"{name}: 已注册 {len(self.TOOLS)} 个工具, {len(self.RESOURCES)} 个资源")

    def _register_tools(self):
        for tool in self.TOOLS:
            self.mcp.tool()(tool)

    def _register_resources(self):
        for uri, resource in self.RESOURCES.items():
            self.mcp.resource(uri)(resource)

    def describe(self) -> dict:
        """服务器名称、工具名与资源 URI"""
        return {
            "name": self.name,
            "tools": [tool.__name__ for tool in self.TOOLS],
            "resources": sorted(self.RESOURCES),
        }

    async def run(self, transport: str = "sse", host: str = "127.0.0.1", port: int = 8001):
        """运行MCP服务器 (异步)，transport 取 sse 或 stdio"""
        if transport not in TRANSPORTS:
            raise ParameterError(f"不支持的传输类型 {transport}，可选 {', '.join(TRANSPORTS)}")
        logger.info(f"运行MCP服务器 {self.name} ({transport})，端口: {port}")
        if transport == "sse":
            await self.mcp.run_sse_async(host=host, port=port)
        else:
            await self.mcp.run_stdio_async()

    @property
    def app(self) -> FastMCP:
        """获取FastMCP应用实例"""
        return self.mcp
