# Workbench configuration package (workbench_config.json)
