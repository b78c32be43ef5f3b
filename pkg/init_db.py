from src import config
from src.db import init_db
from src.utils import sqlite_path

# Relation store and evaluation cache live in separate files
for url in (config.STORE_URL, config.CACHE_URL):
    init_db(url)
    print(f"✅ Schema ready at: {sqlite_path(url)}")
