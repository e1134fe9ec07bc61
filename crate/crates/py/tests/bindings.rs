use steinernet_py::steinernet_module;
use pyo3::ffi::c_str;
use pyo3::prelude::*;

#[test]
fn module_solves_and_reports_errors() {
    pyo3::append_to_inittab!(steinernet_module);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            c_str!(
                r#"
import steinernet as sn
inst = sn.random(7, 16, 4, 3, 3)
assert inst.solve()["cost"] == inst.solve("exhaustive")["cost"]
assert sn.parse(inst.emit()).emit() == inst.emit()
try:
    sn.random(10, 30, 3, 2, 1).solve("exhaustive")
    raise AssertionError("capacity not enforced")
except sn.CapacityError:
    pass
assert issubclass(sn.DomainError, sn.SteinernetError)
path = sn.parse("p dsn 3 2 2 1\na 1 2 1/1\na 2 3 1/2\nr 1 3\n")
cert = path.analyze()
assert all(p["important"]["important"] == [] for p in cert["report"]["paths"])
assert path.solve()["cost"] == "3/2"
"#
            ),
            None,
            None,
        )
        .unwrap();
    });
}
