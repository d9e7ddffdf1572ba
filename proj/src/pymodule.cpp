#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ech/capacities.hpp"
#include "ech/classes.hpp"
#include "ech/dfunc.hpp"
#include "ech/ehrhart.hpp"
#include "ech/obsearch.hpp"
#include "ech/quadext.hpp"
#include "ech/rational.hpp"

namespace py = pybind11;
using namespace ech;

// Exact values cross the boundary as strings ("p/q", "p/q + r/s*sqrt(u/v)");
// python callers keep them symbolic via Fraction/sympy or call float() on
// the approx fields.

namespace {

py::dict cert_to_dict(const EmbedCertificate& cert) {
    py::dict d;
    d["a"] = to_string(cert.a);
    d["lam"] = cert.lam.str();
    d["b"] = to_string(cert.b);
    d["embeds"] = cert.embeds;
    d["kN2"] = cert.kN2.str();
    d["lM2"] = cert.lM2.str();
    d["kN1"] = cert.kN1.str();
    d["lM1"] = cert.lM1.str();
    d["checked_upto"] = cert.checked_upto;
    d["tight_indices"] = cert.tight_indices;
    if (cert.obstruction_index)
        d["obstruction_index"] = *cert.obstruction_index;
    else
        d["obstruction_index"] = py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(echcap, m) {
    m.doc() = "exact ECH capacity computations for ellipsoid-into-polydisc embeddings";

    m.def(
        "ellipsoid_capacities",
        [](const std::string& a, const std::string& b, size_t upto) {
            auto seq = CapacitySequence::ellipsoid(parse_rational(a), parse_rational(b));
            std::vector<std::string> out;
            for (size_t k = 0; k <= upto; ++k) out.push_back(to_string(seq.at(k)));
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("upto"),
        "N_k(a,b) for k = 0..upto, exact strings");

    m.def(
        "polydisc_capacities",
        [](const std::string& c, const std::string& d, size_t upto) {
            auto seq = CapacitySequence::polydisc(parse_rational(c), parse_rational(d));
            std::vector<std::string> out;
            for (size_t k = 0; k <= upto; ++k) out.push_back(to_string(seq.at(k)));
            return out;
        },
        py::arg("c"), py::arg("d"), py::arg("upto"));

    m.def(
        "weight_sequence",
        [](const std::string& a) {
            auto w = weight_sequence(parse_rational(a));
            std::vector<std::pair<std::string, size_t>> out;
            for (const auto& [v, mult] : w.entries) out.emplace_back(to_string(v), mult);
            return out;
        },
        py::arg("a"), "(value, multiplicity) pairs of the weight expansion");

    m.def(
        "certify_embedding",
        [](const std::string& a, const std::string& lam, const std::string& b) {
            return cert_to_dict(
                certify_embedding(parse_rational(a), parse_quadext(lam), parse_rational(b)));
        },
        py::arg("a"), py::arg("lam"), py::arg("b"),
        "decide E(1,a) -> P(lam, lam*b); raises RuntimeError when inconclusive");

    m.def(
        "compute_d",
        [](const std::string& a, const std::string& b, size_t effort) {
            auto r = compute_d(parse_rational(a), parse_rational(b), effort);
            py::dict d;
            d["lower"] = to_string(r.lower);
            d["upper"] = r.upper.str();
            d["witness_index"] = r.witness_index;
            d["matched"] = r.matched;
            d["conclusive"] = r.conclusive;
            if (r.certificate) d["certificate"] = cert_to_dict(*r.certificate);
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("effort") = 200);

    m.def(
        "volume_bound",
        [](const std::string& a, const std::string& b) {
            return volume_bound(parse_rational(a), parse_rational(b)).str();
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "ratio_lower_bound",
        [](const std::string& a, const std::string& b, size_t upto) {
            auto r = ratio_lower_bound(parse_rational(a), parse_rational(b), upto);
            return py::make_tuple(to_string(r.value), r.witness_index);
        },
        py::arg("a"), py::arg("b"), py::arg("upto") = 200);

    m.def(
        "rigidity_threshold",
        [](const std::string& b, const std::string& d_cut) {
            return to_string(rigidity_threshold(parse_rational(b), parse_rational(d_cut)));
        },
        py::arg("b"), py::arg("d_cut") = "0");

    m.def(
        "d_13_2",
        [](const std::string& a) { return theorem_13_2(parse_rational(a)).str(); },
        py::arg("a"), "the proven graph at b = 13/2, exact");

    m.def("d_13_2_graph_csv", [] { return theorem_13_2_graph().csv(); });

    m.def(
        "conjecture_graph_csv",
        [](const std::string& b) { return conjecture_graph(parse_rational(b)).csv(); },
        py::arg("b"), "conjectured piecewise graph for b >= 6");

    m.def(
        "conjecture_witness",
        [](const std::string& a, const std::string& b) {
            auto w = conjecture_lower_bound_witness(parse_rational(a), parse_rational(b));
            return py::make_tuple(w.index, to_string(w.ratio));
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "conjecture_volume_threshold",
        [](const std::string& b) {
            return to_string(conjecture_volume_threshold(parse_rational(b)));
        },
        py::arg("b"));

    m.def(
        "verify_interval",
        [](const std::string& id, unsigned threads) {
            for (const auto& cfg : section5_intervals())
                if (cfg.id == id) return verify_interval(cfg, threads).json();
            throw std::invalid_argument("unknown interval id: " + id);
        },
        py::arg("id"), py::arg("threads") = 1,
        "run one of the published interval searches, returns the report as json");

    m.def(
        "search_interval",
        [](const std::string& lo, const std::string& hi, const std::string& c,
           unsigned threads) {
            auto cfg = make_interval("custom", parse_rational(lo), parse_rational(hi),
                                     parse_rational(c),
                                     (long long)floor_int(parse_rational(lo)));
            return verify_interval(cfg, threads).json();
        },
        py::arg("lo"), py::arg("hi"), py::arg("c") = "13/2", py::arg("threads") = 1);

    m.def("lattice_count",
          [](long long a, long long b, long long r, long long t) {
              return lattice_count(a, b, r, t).convert_to<long long>();
          });
    m.def("lattice_count_brute", [](long long a, long long b, long long s) {
        return lattice_count_brute(a, b, Int(s)).convert_to<long long>();
    });

    m.def(
        "reduce_class",
        [](const std::string& text, size_t max_iter) {
            auto r = reduce_class(parse_class(text), max_iter);
            py::dict d;
            d["ok"] = r.ok;
            d["result"] = r.result.str();
            std::vector<std::string> steps;
            for (const auto& s : r.steps) steps.push_back(s.str());
            d["steps"] = steps;
            d["failure"] = r.failure;
            return d;
        },
        py::arg("text"), py::arg("max_iter") = 200,
        "repeated sort-then-Cremona reduction of a class 'd; d1,d2,...'");
}
