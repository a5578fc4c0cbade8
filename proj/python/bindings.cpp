#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "cyclocode/concentration.hpp"
#include "cyclocode/errors.hpp"
#include "cyclocode/pipeline.hpp"
#include "cyclocode/report.hpp"

namespace py = pybind11;
using namespace cyclocode;

namespace {

using Symbols = std::vector<int>;

Word to_word(const Symbols& s, int q) {
    std::vector<Symbol> out;
    out.reserve(s.size());
    for (int v : s) {
        if (v < 0 || v >= q) throw DomainError("symbol " + std::to_string(v) + " outside the alphabet");
        out.push_back(static_cast<Symbol>(v));
    }
    return Word(std::move(out), q);
}

std::vector<Word> to_words(const std::vector<Symbols>& words, int q) {
    std::vector<Word> out;
    out.reserve(words.size());
    for (const Symbols& s : words) out.push_back(to_word(s, q));
    return out;
}

std::vector<Symbols> from_words(const std::vector<Word>& words) {
    std::vector<Symbols> out;
    out.reserve(words.size());
    for (const Word& w : words) out.emplace_back(w.symbols().begin(), w.symbols().end());
    return out;
}

std::string bounds(std::size_t n, int q, std::optional<std::size_t> d, std::optional<std::size_t> w,
                   std::optional<std::size_t> lambda, std::optional<std::size_t> kappa, std::optional<double> eps,
                   std::optional<double> tau, std::optional<double> p) {
    BoundParams bp;
    bp.n = n;
    bp.q = q;
    bp.d = d;
    bp.w = w;
    bp.lambda = lambda;
    bp.kappa = kappa;
    bp.eps = eps;
    bp.tau = tau;
    bp.p = p;
    return to_json(evaluate_bounds(bp)).dump();
}

py::tuple construct(std::size_t n, int q, std::size_t d, std::optional<std::size_t> weight, const std::string& solver,
                    std::uint64_t seed, std::size_t restarts, unsigned threads, std::size_t exact_limit) {
    ConstructParams p;
    p.n = n;
    p.q = q;
    p.d = d;
    p.weight = weight;
    p.solver.strategy = parse_strategy(solver);
    p.solver.seed = seed;
    p.solver.restarts = restarts;
    p.solver.threads = threads;
    p.graph_budget.threads = threads;
    p.verify.threads = threads;
    p.exact_limit = exact_limit;
    ConstructResult r;
    {
        py::gil_scoped_release release;
        r = construct_code(p);
    }
    return py::make_tuple(to_json(r).dump(), from_words(r.code.words));
}

std::string verify(const std::vector<Symbols>& words, std::size_t n, int q, std::size_t d, std::optional<std::size_t> weight) {
    const std::vector<Word> code = to_words(words, q);
    const Verdict v = weight ? verify_ooc(code, n, *weight, d) : verify_hcc(code, n, q, d);
    return to_json(v).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cyclic code construction and verification";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);

    m.def("version", &version);
    m.def("ball_volume", [](std::size_t n, int q, std::size_t t) { return ball_volume(n, q, t).str(); });
    m.def("cw_ball_volume", [](std::size_t n, std::size_t w, std::size_t t) { return cw_ball_volume(n, w, t).str(); });
    m.def("gv_bound", [](std::size_t n, int q, std::size_t d) { return gv_bound(n, q, d).str(); });
    m.def("bounds", &bounds, py::arg("n"), py::arg("q") = 2, py::arg("d") = py::none(), py::arg("w") = py::none(),
          py::arg("lam") = py::none(), py::arg("kappa") = py::none(), py::arg("eps") = py::none(), py::arg("tau") = py::none(),
          py::arg("p") = py::none());
    m.def("auto_distance", [](const Symbols& x, int q) { return min_cyclic_autodistance(to_word(x, q)); });
    m.def("class_distance", [](const Symbols& a, const Symbols& b, int q) { return class_distance(to_word(a, q), to_word(b, q)); });
    m.def("construct", &construct, py::arg("n"), py::arg("q"), py::arg("d"), py::arg("weight") = py::none(),
          py::arg("solver") = "gv-greedy", py::arg("seed") = 0, py::arg("restarts") = 8, py::arg("threads") = 1,
          py::arg("exact_limit") = 0);
    m.def("verify", &verify, py::arg("words"), py::arg("n"), py::arg("q"), py::arg("d"), py::arg("weight") = py::none());
    m.def("correlations", [](const std::vector<Symbols>& words, int q) { return to_json(correlation_report(to_words(words, q))).dump(); });
    m.def("exact_set_a", [](std::size_t n, int q, double eps) { return to_json(exact_set_A(n, q, eps)).dump(); });
    m.def(
        "mc_tail",
        [](std::size_t n, int q, double eps, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
            TailEstimate t;
            {
                py::gil_scoped_release release;
                t = mc_tail(n, q, set_A_threshold(n, q, eps), samples, seed, SamplingMode::uniform(), threads);
            }
            return to_json(t).dump();
        },
        py::arg("n"), py::arg("q"), py::arg("eps"), py::arg("samples"), py::arg("seed") = 0, py::arg("threads") = 1);
    m.def("read_code", [](const std::string& text) {
        const CodeArtifact c = read_code(text);
        return py::make_tuple(to_json(c).dump(), from_words(c.words));
    });
    m.def(
        "write_code",
        [](const std::string& kind, std::size_t n, int q, std::size_t d, const std::vector<Symbols>& words,
           std::optional<std::size_t> weight, std::optional<std::size_t> lambda, std::optional<std::size_t> kappa) {
            CodeArtifact c;
            c.kind = parse_kind(kind);
            c.n = n;
            c.q = q;
            c.d = d;
            c.weight = weight;
            c.lambda = lambda;
            c.kappa = kappa;
            c.words = to_words(words, q);
            return write_code(c);
        },
        py::arg("kind"), py::arg("n"), py::arg("q"), py::arg("d"), py::arg("words"), py::arg("weight") = py::none(),
        py::arg("lam") = py::none(), py::arg("kappa") = py::none());
}
