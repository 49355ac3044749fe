"""Build the stored list of connected 8-vertex graphs."""
import time

from cnrkernel.corpus import N8_COUNT, N8_FILE, write_n8

if __name__ == "__main__":
    t0 = time.perf_counter()
    count = write_n8()
    print(f"wrote {count} graphs to {N8_FILE} in {time.perf_counter() - t0:.1f}s")
    if count != N8_COUNT:
        raise SystemExit(f"expected {N8_COUNT} graphs")
