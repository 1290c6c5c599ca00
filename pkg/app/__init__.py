# app 包初始化: 格上最短向量问题的经典约化 + VQE 仿真

__version__ = "1.0.0"
