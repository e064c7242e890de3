"""Print the large-n constants next to the quoted values."""
from lpbounds.cli import constant_rows

for r in constant_rows():
    ref = "" if r["reference"] is None else f"ref {r['reference']:<10} dev {r['abs_dev']:+.2e}  ok={r['within']}"
    print(f"{r['name']:<32} {r['computed']:.10f}  {ref}")
