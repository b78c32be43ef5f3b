from src import config
from src.db import cache_size, count_relations, get_conn, init_db, recent_events

init_db(config.STORE_URL)
init_db(config.CACHE_URL)

conn = get_conn(config.STORE_URL)
cur = conn.cursor()

print("\n🧾 Available Tables:")
for row in cur.execute("SELECT name FROM sqlite_master WHERE type='table';"):
    print("-", row[0])

print("\n📈 Latest check runs:")
for row in cur.execute("SELECT suite, check_id, passed, residual, digits FROM check_run ORDER BY id DESC LIMIT 10;"):
    print(row)

conn.close()

print(f"\n💾 Cached evaluations: {cache_size(config.CACHE_URL)}")

print("\n🔗 Relations (weight, provenance, count):")
for row in count_relations(config.STORE_URL):
    print(row)

print("\n🕒 Recent events:")
for row in recent_events(10, config.STORE_URL):
    print(row)
