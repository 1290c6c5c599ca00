import asyncio
import logging

from app.mcp_server.lattice import LatticeMCPServer

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

# 创建MCP服务器实例
mcp_server = LatticeMCPServer()

# 获取FastMCP应用实例 (供client连接使用)
mcp = mcp_server.app

# 直接运行此脚本时启动服务器
if __name__ == "__main__":
    asyncio.run(mcp_server.run(port=8001, transport="sse"))
