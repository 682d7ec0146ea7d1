# 模型包初始化文件
