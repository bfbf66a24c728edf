#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "klein/cyclo.hpp"
#include "klein/fusion.hpp"
#include "klein/labels.hpp"
#include "klein/verify.hpp"

namespace py = pybind11;

namespace {

std::vector<std::string> labels_py(int k) {
    std::vector<std::string> out;
    for (const auto& lab : klein::enumerate_labels(klein::Level(k)))
        out.push_back(klein::to_string(lab));
    return out;
}

std::map<std::string, int> outcome_py(const klein::FusionOutcome& row) {
    std::map<std::string, int> out;
    for (const auto& [lab, m] : row) out[klein::to_string(lab)] = m;
    return out;
}

class TablePy {
public:
    explicit TablePy(int k, int jobs = 0)
        : table_(klein::build_table(klein::Level(k), {jobs, true})) {}
    explicit TablePy(klein::FusionTable t) : table_(std::move(t)) {}

    int k() const { return table_.level(); }
    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        for (const auto& lab : table_.labels()) out.push_back(klein::to_string(lab));
        return out;
    }
    std::map<std::string, int> fuse(const std::string& a, const std::string& b) const {
        klein::Level level(table_.level());
        return outcome_py(table_.fuse(klein::parse_label(a, level),
                                      klein::parse_label(b, level)));
    }
    int mult(const std::string& a, const std::string& b, const std::string& c) const {
        klein::Level level(table_.level());
        return table_.mult(klein::parse_label(a, level), klein::parse_label(b, level),
                           klein::parse_label(c, level));
    }
    std::string to_json() const { return table_.to_json(); }
    static TablePy from_json(const std::string& text) {
        return TablePy(klein::FusionTable::from_json(text));
    }
    bool equals(const TablePy& o) const { return table_ == o.table_; }
    std::string verify_json(std::uint64_t seed, int jobs) const {
        return klein::run_checks(table_, seed, jobs).to_json();
    }
    bool verify_ok(std::uint64_t seed, int jobs) const {
        return klein::run_checks(table_, seed, jobs).all_pass();
    }

private:
    klein::FusionTable table_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact fusion-ring calculator for Klein-orbifold affine module categories";

    m.def("labels", &labels_py, py::arg("k"), "canonical module labels at level k");
    m.def(
        "label_count", [](int k) { return klein::label_count(klein::Level(k)); }, py::arg("k"));
    m.def(
        "canonicalize",
        [](const std::string& s, int k) {
            return klein::to_string(klein::parse_label(s, klein::Level(k)));
        },
        py::arg("label"), py::arg("k"), "canonical form of a label string");
    m.def(
        "qdim_float",
        [](const std::string& s, int k) {
            klein::Level level(k);
            return klein::qdim(klein::parse_label(s, level), level).to_float();
        },
        py::arg("label"), py::arg("k"));
    m.def(
        "qdim_coeffs",
        [](const std::string& s, int k) {
            klein::Level level(k);
            auto d = klein::qdim(klein::parse_label(s, level), level);
            std::vector<std::string> out;
            for (std::size_t i = 0; i < d.coeffs().size(); ++i) out.push_back(d.coeff_string(i));
            return out;
        },
        py::arg("label"), py::arg("k"),
        "exact rational coefficients in the cyclotomic field of conductor 4(k+2)");
    m.def(
        "verify",
        [](int k, std::uint64_t seed, int jobs) {
            return klein::verify_all(klein::Level(k), seed, jobs).to_json();
        },
        py::arg("k"), py::arg("seed") = 0, py::arg("jobs") = 0,
        "build the table and run every oracle; returns the JSON report");

    py::class_<TablePy>(m, "FusionTable")
        .def(py::init<int, int>(), py::arg("k"), py::arg("jobs") = 0)
        .def_property_readonly("k", &TablePy::k)
        .def("labels", &TablePy::labels)
        .def("fuse", &TablePy::fuse, py::arg("a"), py::arg("b"))
        .def("mult", &TablePy::mult, py::arg("a"), py::arg("b"), py::arg("c"))
        .def("to_json", &TablePy::to_json)
        .def_static("from_json", &TablePy::from_json, py::arg("text"))
        .def("verify", &TablePy::verify_json, py::arg("seed") = 0, py::arg("jobs") = 0)
        .def("verify_ok", &TablePy::verify_ok, py::arg("seed") = 0, py::arg("jobs") = 0)
        .def("__eq__", &TablePy::equals);
}
