// Acceptance gate: runs the toolkit's contract checks end to end and prints
// one PASS / FAIL / SKIP line per criterion. Exits nonzero if any gating
// criterion fails. Data-dependent checks (10, 11 below use shipped corpora;
// the real-world datasets of 11 and 12) are skipped when the files are not
// present; set MOBGRAPH_DATA_DIR to point at them.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mobgraph/centrality.hpp"
#include "mobgraph/construct.hpp"
#include "mobgraph/flows.hpp"
#include "mobgraph/graph.hpp"
#include "mobgraph/io.hpp"
#include "mobgraph/laplacian.hpp"
#include "mobgraph/spectral.hpp"
#include "grids.hpp"
#include "oracles.hpp"

using namespace mobgraph;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Gate {
    int failures = 0;

    void report(int number, Verdict v, const std::string& text, const std::string& detail = "",
                bool gating = true) {
        const char* tag = v == Verdict::Pass ? "PASS" : v == Verdict::Fail ? "FAIL" : "SKIP";
        std::cout << tag << " — " << number << ". " << text;
        if (!detail.empty()) std::cout << " [" << detail << "]";
        std::cout << '\n';
        if (v == Verdict::Fail && gating) ++failures;
    }
};

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string data_file(const std::string& name) {
    const char* dir = std::getenv("MOBGRAPH_DATA_DIR");
    std::filesystem::path p = std::filesystem::path(dir ? dir : "data") / name;
    return std::filesystem::exists(p) ? p.string() : std::string();
}

// --- 1. betweenness vs exhaustive path enumeration --------------------------

Verdict betweenness_oracle(std::string& detail) {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        bool directed = i % 2 == 0;
        double p = 0.15 + 0.1 * (i % 4);
        Graph g = oracles::random_graph(rng, size(rng), p, directed, true);
        Eigen::VectorXd got = betweenness(g);
        std::vector<double> want = oracles::betweenness_by_enumeration(g);
        for (std::size_t v = 0; v < g.node_count(); ++v)
            worst = std::max(worst, std::abs(got(static_cast<Eigen::Index>(v)) - want[v]));
    }
    std::ostringstream os;
    os << "max |err| " << worst;
    detail = os.str();
    return worst <= 1e-9 ? Verdict::Pass : Verdict::Fail;
}

// --- 2. harmonic dominates closeness ----------------------------------------

Verdict harmonic_dominates(std::string& detail) {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> size(2, 30);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        Graph g = oracles::random_graph(rng, size(rng), 0.1 + 0.05 * (i % 5), i % 2 == 0, false);
        for (Orientation o : {Orientation::Out, Orientation::In}) {
            Eigen::VectorXd h = harmonic(g, o);
            Eigen::VectorXd c = closeness(g, o);
            for (Eigen::Index v = 0; v < h.size(); ++v)
                if (h(v) < c(v)) ++violations;
        }
    }
    detail = std::to_string(violations) + " violations";
    return violations == 0 ? Verdict::Pass : Verdict::Fail;
}

// --- 3. Perron stationarity, circulation balance, average-circulation -------

Verdict perron_stationarity(std::string& detail) {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<std::size_t> size(2, 100);
    double worst_residual = 0.0, worst_balance = 0.0, worst_identity = 0.0;
    for (int i = 0; i < 50; ++i) {
        Graph g = oracles::random_strongly_connected(rng, size(rng), 0.05, false);
        PerronVector pv = perron_vector(g);
        worst_residual = std::max(worst_residual, pv.residual);

        CirculationField f = circulation(g, pv);
        worst_balance = std::max(worst_balance, circulation_imbalance(f).cwiseAbs().maxCoeff());

        Eigen::VectorXd avg = average_node_circulation(g, f);
        Eigen::VectorXd outdeg = degrees(g, Orientation::Out).values;
        worst_identity = std::max(
            worst_identity, (avg.cwiseProduct(outdeg) - pv.phi).cwiseAbs().maxCoeff());
    }
    std::ostringstream os;
    os << "residual " << worst_residual << ", balance " << worst_balance << ", identity "
       << worst_identity;
    detail = os.str();
    return (worst_residual <= 1e-10 && worst_balance <= 1e-12 && worst_identity <= 1e-12)
               ? Verdict::Pass
               : Verdict::Fail;
}

// --- 4. undirected stationary vector is degree-proportional ------------------

Verdict undirected_perron_closed_form(std::string& detail) {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<std::size_t> size(2, 80);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        Graph g = oracles::random_connected_undirected(rng, size(rng), 0.1, false);
        Eigen::VectorXd phi = perron_vector(g, 1e-14).phi;
        Eigen::VectorXd d = degrees(g, Orientation::Out).values;
        Eigen::VectorXd want = d / d.sum();
        worst = std::max(worst, ((phi - want).cwiseQuotient(want)).cwiseAbs().maxCoeff());
    }
    std::ostringstream os;
    os << "max rel dev " << worst;
    detail = os.str();
    return worst <= 1e-10 ? Verdict::Pass : Verdict::Fail;
}

// --- 5. Laplacian symmetry / PSD suite ---------------------------------------

Verdict laplacian_suite(std::string& detail) {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<std::size_t> size(2, 60);
    double worst_defect = 0.0, worst_min_eig = 0.0, worst_diplacian = 0.0;

    auto check = [&](const Graph& g, LaplacianKind kind) {
        Eigen::MatrixXd m = laplacian(g, kind);
        worst_defect = std::max(worst_defect, symmetry_defect(m));
        Eigen::VectorXd ev = symmetric_eigenvalues(m);
        worst_min_eig = std::min(worst_min_eig, ev.minCoeff());
    };

    for (int i = 0; i < 50; ++i) {
        Graph u = oracles::random_connected_undirected(rng, size(rng), 0.08, false);
        check(u, LaplacianKind::Combinatorial);
        check(u, LaplacianKind::Normalized);

        Graph d = oracles::random_strongly_connected(rng, size(rng), 0.05, false);
        check(d, LaplacianKind::CombinatorialDirected);
        check(d, LaplacianKind::Symmetrized);
        check(d, LaplacianKind::CombinatorialSymmetrized);

        // symmetric adjacency, stored as a directed graph: the Diplacian must
        // coincide with the Normalized Laplacian
        std::vector<Triplet> entries;
        const SparseMatrix& a = u.adjacency();
        for (Eigen::Index row = 0; row < a.outerSize(); ++row)
            for (SparseMatrix::InnerIterator it(a, row); it; ++it)
                entries.emplace_back(it.row(), it.col(), it.value());
        Graph sym(true, u.labels(), entries);
        Eigen::MatrixXd gamma = laplacian(sym, LaplacianKind::Diplacian);
        Eigen::MatrixXd norm = laplacian(sym, LaplacianKind::Normalized);
        worst_diplacian = std::max(worst_diplacian, (gamma - norm).cwiseAbs().maxCoeff());
    }
    std::ostringstream os;
    os << "defect " << worst_defect << ", min eig " << worst_min_eig << ", diplacian gap "
       << worst_diplacian;
    detail = os.str();
    return (worst_defect <= 1e-12 && worst_min_eig >= -1e-10 && worst_diplacian <= 1e-12)
               ? Verdict::Pass
               : Verdict::Fail;
}

// --- 6. spectral identities and bounds ---------------------------------------

Verdict spectral_identities(std::string& detail) {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<std::size_t> size(2, 60);
    double worst_normalized = 0.0, worst_symmetrized = 0.0;
    double min_eig = 0.0, max_eig = 2.0;

    for (int i = 0; i < 50; ++i) {
        Graph u = oracles::random_connected_undirected(rng, size(rng), 0.08, false);
        Eigen::VectorXd dinv_sqrt =
            degrees(u, Orientation::Out).values.cwiseSqrt().cwiseInverse();
        Eigen::MatrixXd want = dinv_sqrt.asDiagonal() *
                               laplacian(u, LaplacianKind::Combinatorial) *
                               dinv_sqrt.asDiagonal();
        Eigen::MatrixXd got = laplacian(u, LaplacianKind::Normalized);
        worst_normalized = std::max(worst_normalized, (got - want).cwiseAbs().maxCoeff());

        Eigen::VectorXd ev = symmetric_eigenvalues(got);
        min_eig = std::min(min_eig, ev.minCoeff());
        max_eig = std::max(max_eig, ev.maxCoeff());

        Graph d = oracles::random_strongly_connected(rng, size(rng), 0.05, false);
        Eigen::VectorXd phi_inv_sqrt = stationary_distribution(d).cwiseSqrt().cwiseInverse();
        Eigen::MatrixXd script_want = phi_inv_sqrt.asDiagonal() *
                                      laplacian(d, LaplacianKind::CombinatorialSymmetrized) *
                                      phi_inv_sqrt.asDiagonal();
        Eigen::MatrixXd script_got = laplacian(d, LaplacianKind::Symmetrized);
        worst_symmetrized =
            std::max(worst_symmetrized, (script_got - script_want).cwiseAbs().maxCoeff());
    }

    bool radius_grows = true;
    double prev = -1.0;
    for (int side : {3, 5, 10}) {
        Graph lattice = region_adjacency_graph(testgrids::grid_partition(side, side),
                                               Contiguity::Rook);
        Eigen::VectorXd ev = symmetric_eigenvalues(laplacian(lattice, LaplacianKind::Combinatorial));
        double radius = ev.cwiseAbs().maxCoeff();
        if (radius <= prev) radius_grows = false;
        prev = radius;
    }

    std::ostringstream os;
    os << "normalized gap " << worst_normalized << ", symmetrized gap " << worst_symmetrized
       << ", eigenvalue range [" << min_eig << ", " << max_eig << "], radius growth "
       << (radius_grows ? "strict" : "broken");
    detail = os.str();
    return (worst_normalized <= 1e-12 && worst_symmetrized <= 1e-12 && min_eig >= -1e-10 &&
            max_eig <= 2.0 + 1e-10 && radius_grows)
               ? Verdict::Pass
               : Verdict::Fail;
}

// --- 7. exact small spectra ---------------------------------------------------

Verdict path_spectra(std::string& detail) {
    Graph p3 = Graph::from_edges({{"a", "b", 1.0}, {"b", "c", 1.0}}, false);
    Eigen::VectorXd comb = symmetric_eigenvalues(laplacian(p3, LaplacianKind::Combinatorial));
    Eigen::VectorXd norm = symmetric_eigenvalues(laplacian(p3, LaplacianKind::Normalized));
    double worst = 0.0;
    double comb_want[] = {0.0, 1.0, 3.0};
    double norm_want[] = {0.0, 1.0, 2.0};
    for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(comb(i) - comb_want[i]));
        worst = std::max(worst, std::abs(norm(i) - norm_want[i]));
    }
    std::ostringstream os;
    os << "max |err| " << worst;
    detail = os.str();
    return worst <= 1e-10 ? Verdict::Pass : Verdict::Fail;
}

// --- 8. gravity conservation and mass-scale invariance ------------------------

GravitySpec random_gravity_spec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::uniform_real_distribution<double> mass(0.5, 50.0);
    std::uniform_real_distribution<double> outflow(0.0, 500.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    GravitySpec s;
    s.ids = oracles::node_labels(n);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
        pts.emplace_back(coord(rng), coord(rng));
        s.masses.push_back(mass(rng));
        s.outflows.push_back(coin(rng) < 0.2 ? 0.0 : outflow(rng));
    }
    s.distances = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                        static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                s.distances(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second) + 0.1;
    s.beta1 = 0.5 + coin(rng);
    s.beta2 = coin(rng) < 0.5 ? 1.5 : 0.8;
    s.deterrence = coin(rng) < 0.5 ? Deterrence::Power : Deterrence::Exponential;
    return s;
}

Verdict gravity_contract(std::string& detail) {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<std::size_t> size(2, 40);
    double worst_row = 0.0, worst_scale = 0.0;
    for (int i = 0; i < 50; ++i) {
        GravitySpec s = random_gravity_spec(rng, size(rng));
        ODMatrix y = gravity_flows(s);
        for (Eigen::Index row = 0; row < y.flows.rows(); ++row) {
            double sum = 0.0;
            for (SparseMatrix::InnerIterator it(y.flows, row); it; ++it) sum += it.value();
            double o = s.outflows[static_cast<std::size_t>(row)];
            if (o > 0.0) worst_row = std::max(worst_row, std::abs(sum - o) / o);
        }

        GravitySpec scaled = s;
        for (double& m : scaled.masses) m *= 7.5;
        ODMatrix z = gravity_flows(scaled);
        for (Eigen::Index row = 0; row < y.flows.rows(); ++row) {
            SparseMatrix::InnerIterator a(y.flows, row), b(z.flows, row);
            for (; a && b; ++a, ++b) {
                double rel = std::abs(a.value() - b.value()) / a.value();
                worst_scale = std::max(worst_scale, rel);
            }
            if (a || b) worst_scale = 1.0; // support mismatch
        }
    }
    std::ostringstream os;
    os << "row-sum rel " << worst_row << ", scale rel " << worst_scale;
    detail = os.str();
    return (worst_row <= 1e-12 && worst_scale <= 1e-12) ? Verdict::Pass : Verdict::Fail;
}

// --- 9. CPC contract -----------------------------------------------------------

ODMatrix random_od(std::mt19937_64& rng, const std::vector<std::string>& ids, double density) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> flow(0.1, 50.0);
    std::vector<Triplet> entries;
    auto n = static_cast<Eigen::Index>(ids.size());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && coin(rng) < density) entries.emplace_back(i, j, flow(rng));
    return make_od_matrix(ids, entries);
}

Verdict cpc_contract(std::string& detail) {
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<std::size_t> size(2, 25);
    double worst_self = 0.0;
    bool symmetric = true, in_range = true;
    for (int i = 0; i < 100; ++i) {
        std::vector<std::string> ids = oracles::node_labels(size(rng));
        ODMatrix y = random_od(rng, ids, 0.4);
        ODMatrix z = random_od(rng, ids, 0.4);
        if (y.flows.nonZeros() == 0 && z.flows.nonZeros() == 0) continue;
        double c = cpc(y, z);
        if (c != cpc(z, y)) symmetric = false;
        if (!(c >= 0.0 && c <= 1.0)) in_range = false;
        if (y.flows.nonZeros() > 0)
            worst_self = std::max(worst_self, std::abs(cpc(y, y) - 1.0));
    }

    // one unit of overlap out of two trips on each side -> exactly one half
    ODMatrix two = make_od_matrix({"a", "b", "c"}, {{0, 1, 2.0}});
    ODMatrix ones = make_od_matrix({"a", "b", "c"}, {{0, 1, 1.0}, {0, 2, 1.0}});
    bool half = cpc(two, ones) == 0.5;

    std::ostringstream os;
    os << "self gap " << worst_self << ", symmetry " << (symmetric ? "exact" : "broken")
       << ", range " << (in_range ? "ok" : "broken") << ", half case "
       << (half ? "exact" : "off");
    detail = os.str();
    return (worst_self <= 1e-15 && symmetric && in_range && half) ? Verdict::Pass
                                                                  : Verdict::Fail;
}

// --- 10. Fick round trip --------------------------------------------------------

Verdict fick_round_trip(std::string& detail) {
    std::mt19937_64 rng(1010);
    std::uniform_int_distribution<std::size_t> size(2, 200);
    std::uniform_real_distribution<double> level(-10.0, 10.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        Graph g = oracles::random_connected_undirected(rng, size(rng), 0.03, false);
        auto n = static_cast<Eigen::Index>(g.node_count());
        Eigen::VectorXd phi(n);
        for (Eigen::Index v = 0; v < n; ++v) phi(v) = level(rng);
        Eigen::VectorXd centered = phi - Eigen::VectorXd::Constant(n, phi.mean());

        double k = 0.25 + 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        Eigen::MatrixXd L = laplacian(g, LaplacianKind::Combinatorial);
        FluxVector flux{-k * (L * phi), k};
        Eigen::VectorXd estimate = estimate_population(g, flux);
        worst = std::max(worst, (estimate - centered).cwiseAbs().maxCoeff());
    }
    std::ostringstream os;
    os << "max |err| " << worst;
    detail = os.str();
    return worst <= 1e-8 ? Verdict::Pass : Verdict::Fail;
}

// --- 11 & 12. dataset-dependent checks -------------------------------------------

struct DatasetCheck {
    bool available = false;
    Verdict verdict = Verdict::Skip;
    std::string detail;
};

DatasetCheck structural_counts() {
    struct Expectation {
        const char* file;
        std::size_t nodes;
    };
    const Expectation partitions[] = {
        {"genova_province.geojson", 137},
        {"uk_districts.geojson", 344},
        {"ny_tracts.geojson", 5410},
    };

    DatasetCheck r;
    std::ostringstream os;
    bool ok = true, any = false;
    for (const Expectation& e : partitions) {
        std::string path = data_file(e.file);
        if (path.empty()) continue;
        any = true;
        Graph g = region_adjacency_graph(read_partition_geojson(path));
        os << e.file << " nodes " << g.node_count() << "/" << e.nodes << "; ";
        if (g.node_count() != e.nodes) ok = false;
    }
    std::string od_path = data_file("ny_od.csv");
    if (!od_path.empty()) {
        any = true;
        std::string ids = data_file("ny_od_ids.txt");
        Graph g = od_graph(read_od_csv(od_path, ids));
        os << "ny_od nodes " << g.node_count() << "/2836, edges " << g.nonzero_count()
           << "/939888";
        if (g.node_count() != 2836 || g.nonzero_count() != 939888) ok = false;
    }
    r.available = any;
    r.detail = os.str();
    r.verdict = !any ? Verdict::Skip : ok ? Verdict::Pass : Verdict::Fail;
    return r;
}

DatasetCheck closeness_median_trend() {
    const char* files[] = {"genova_province.geojson", "uk_districts.geojson",
                           "ny_tracts.geojson"};
    DatasetCheck r;
    std::ostringstream os;
    bool ok = true, any = false;
    for (const char* file : files) {
        std::string path = data_file(file);
        if (path.empty()) continue;
        any = true;
        Graph g = region_adjacency_graph(read_partition_geojson(path));
        Eigen::VectorXd c = normalize(closeness(g), NormalizeMethod::Max);
        Eigen::VectorXd b = normalize(betweenness(g), NormalizeMethod::Max);
        double mc = median({c.data(), c.data() + c.size()});
        double mb = median({b.data(), b.data() + b.size()});
        os << file << " closeness median " << mc << " vs betweenness median " << mb << "; ";
        if (mc <= mb) ok = false;
    }
    r.available = any;
    r.detail = os.str();
    r.verdict = !any ? Verdict::Skip : ok ? Verdict::Pass : Verdict::Fail;
    return r;
}

} // namespace

int main() {
    Gate gate;
    std::string detail;

    gate.report(1, betweenness_oracle(detail),
                "betweenness equals exhaustive path enumeration (100 graphs, n <= 8, tol 1e-9)",
                detail);
    gate.report(2, harmonic_dominates(detail),
                "harmonic >= closeness per node, both orientations (100 graphs, n <= 30)",
                detail);
    gate.report(3, perron_stationarity(detail),
                "stationarity residual <= 1e-10, circulation balance and average-circulation "
                "identity <= 1e-12 (50 digraphs, n <= 100)",
                detail);
    gate.report(4, undirected_perron_closed_form(detail),
                "undirected stationary vector matches d / sum(d) within rel 1e-10 (20 graphs)",
                detail);
    gate.report(5, laplacian_suite(detail),
                "laplacian variants symmetric (defect <= 1e-12), PSD (min eig >= -1e-10); "
                "diplacian == normalized for symmetric adjacency (<= 1e-12)",
                detail);
    gate.report(6, spectral_identities(detail),
                "scaling identities <= 1e-12; normalized spectrum within [0, 2] (tol 1e-10); "
                "combinatorial spectral radius grows across nested lattices (9, 25, 100 nodes)",
                detail);
    gate.report(7, path_spectra(detail),
                "three-node path spectra: combinatorial {0, 1, 3}, normalized {0, 1, 2} "
                "(tol 1e-10)",
                detail);
    gate.report(8, gravity_contract(detail),
                "gravity row sums equal outflows (rel 1e-12) and flows are mass-scale "
                "invariant (50 specs)",
                detail);
    gate.report(9, cpc_contract(detail),
                "cpc(y, y) == 1 (tol 1e-15), symmetric, in [0, 1] (100 pairs); the 2-vs-1+1 "
                "case equals 0.5 exactly",
                detail);
    gate.report(10, fick_round_trip(detail),
                "diffusion inversion recovers the centered field within 1e-8 (20 graphs, "
                "n <= 200)",
                detail);

    DatasetCheck counts = structural_counts();
    gate.report(11, counts.verdict,
                "region-adjacency / OD structural counts match the published figures",
                counts.available ? counts.detail : "datasets not present; set MOBGRAPH_DATA_DIR");

    DatasetCheck trend = closeness_median_trend();
    gate.report(12, trend.verdict,
                "max-normalized closeness median exceeds betweenness median (informational)",
                trend.available ? trend.detail : "datasets not present; set MOBGRAPH_DATA_DIR",
                /*gating=*/false);

    if (gate.failures > 0) {
        std::cout << gate.failures << " gating criterion(s) failed\n";
        return 1;
    }
    std::cout << "all gating criteria satisfied\n";
    return 0;
}
