"""Smoke test for the eisentool_py extension module.

Build and install it first, for example with
`maturin build --release -m crates/python/Cargo.toml -o dist` and `pip install dist/*.whl`.
"""

import eisentool_py as et


def main():
    g = et.gram("L3")
    assert len(g) == 3 and all(len(row) == 3 for row in g)
    assert g[0][0] == (3, 0)
    assert g[0][1] == (1, 2)  # theta = 1 + 2w

    assert et.disc_form("L1")["order"] == 3
    assert et.disc_form("L2")["f4_rank"] == 1
    assert et.disc_form("L4")["order"] == 1

    assert [et.short_vector_count(f"L{k}", 3) for k in range(1, 5)] == [6, 24, 72, 240]
    assert et.triflection_group_order("L3") == 648

    assert "determinism" in et.check_ids()
    report = et.verify("disc-forms")
    assert report["status"] == "pass", report
    assert report["values"]["L2.order"]["computed"] == 4

    try:
        et.gram("L1 +* L3")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print(f"eisentool_py {et.__version__}: ok")


if __name__ == "__main__":
    main()
