#include "verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "wigner/families.hpp"
#include "wigner/grassmann.hpp"
#include "wigner/recovery.hpp"
#include "wigner/rng.hpp"
#include "wigner/xset.hpp"

namespace wigner::verify {

namespace {

struct Tally {
    int passed = 0;
    int total = 0;
    void note(bool ok) {
        ++total;
        if (ok) ++passed;
    }
    bool clean() const { return passed == total; }
};

void print(std::ostream& out, const char* name, const Tally& tally, bool& all_ok) {
    out << name << ": " << tally.passed << "/" << tally.total << "\n";
    all_ok = all_ok && tally.clean();
}

// Equal-rank pair with a c-dimensional common part when the ambient leaves
// room for independent remainders.
std::pair<Frame, Frame> structured_pair(Rng& rng, int n, int k, int c) {
    const Frame common = random_frame(rng, n, c);
    const Frame rest = ortho_complement(common);
    Rng ra = rng.fork(1);
    Rng rb = rng.fork(2);
    auto extend = [&](Rng& r) {
        if (k == c) return common;
        const Frame extra = random_frame(r, rest.rank(), k - c);
        Eigen::MatrixXcd cols(n, k);
        if (c > 0) cols.leftCols(c) = common.columns();
        cols.rightCols(k - c) = rest.columns() * extra.columns();
        return Frame(std::move(cols));
    };
    return {extend(ra), extend(rb)};
}

std::pair<Frame, Frame> compatible_pair(Rng& rng, int n, int k) {
    const Eigen::MatrixXcd basis = rng.unitary(n);
    const int shared = rng.uniform_int(std::max(0, 2 * k - n), k - 1);
    Eigen::MatrixXcd xcols(n, k);
    Eigen::MatrixXcd ycols(n, k);
    // X takes columns [0, k); Y takes [0, shared) plus [k, 2k - shared)
    for (int i = 0; i < k; ++i) xcols.col(i) = basis.col(i);
    for (int i = 0; i < shared; ++i) ycols.col(i) = basis.col(i);
    for (int i = shared; i < k; ++i) ycols.col(i) = basis.col(k + i - shared);
    return {Frame(std::move(xcols)), Frame(std::move(ycols))};
}

double max_induced_line_gap(const SemilinearMap& a, const SemilinearMap& b, int probes,
                            Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < probes; ++i) {
        const Eigen::VectorXcd x = rng.gaussian_vector(a.source_dim()).normalized();
        const Frame fa(a.apply(x).normalized());
        const Frame fb(b.apply(x).normalized());
        worst = std::max(worst, gap_distance(fa, fb));
    }
    return worst;
}

}  // namespace

bool run_graph(std::ostream& out, std::uint64_t seed) {
    bool ok = true;
    Rng rng(seed);

    Tally dist;
    Tally geod;
    const std::vector<std::pair<int, int>> combos = {{3, 1}, {3, 2}, {4, 2}, {5, 2}, {5, 3}};
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const auto [n, k] = combos[ci];
        for (int trial = 0; trial < 20; ++trial) {
            Rng local = rng.fork(ci * 1000 + static_cast<std::uint64_t>(trial));
            const int c = local.uniform_int(0, k);
            auto [x, y] = structured_pair(local, n, k, c);
            const int d = distance(x, y);
            dist.note(d == k - meet(x, y).rank());
            const GeodesicPath path = build_geodesic(x, y);
            geod.note(path.edge_count() == d &&
                      gap_distance(path.vertices().front(), x) <= 1e-9 &&
                      gap_distance(path.vertices().back(), y) <= 1e-9);
        }
    }
    print(out, "verify/graph/distance-formula", dist, ok);
    print(out, "verify/graph/geodesic-length", geod, ok);

    Tally tops;
    Tally stars;
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 3}}) {
        Rng local = rng.fork(7000 + static_cast<std::uint64_t>(n * 10 + k));
        const Top top(random_frame(local, n, k + 1));
        const auto top_family = max_compatible_in_top(top);
        bool top_ok = static_cast<int>(top_family.size()) == k + 1;
        for (std::size_t i = 0; i < top_family.size() && top_ok; ++i) {
            for (std::size_t j = i + 1; j < top_family.size() && top_ok; ++j) {
                top_ok = is_ortho_adjacent(top_family[i], top_family[j]);
            }
        }
        tops.note(top_ok);

        const Star star(random_frame(local, n, k - 1));
        const auto star_family = max_compatible_in_star(star, Frame::standard(n));
        bool star_ok = static_cast<int>(star_family.size()) == n - k + 1;
        for (std::size_t i = 0; i < star_family.size() && star_ok; ++i) {
            for (std::size_t j = i + 1; j < star_family.size() && star_ok; ++j) {
                star_ok = is_ortho_adjacent(star_family[i], star_family[j]);
            }
        }
        stars.note(star_ok);
    }
    print(out, "verify/graph/top-cliques", tops, ok);
    print(out, "verify/graph/star-cliques", stars, ok);

    Tally compat;
    for (int trial = 0; trial < 20; ++trial) {
        Rng local = rng.fork(9000 + static_cast<std::uint64_t>(trial));
        const int n = 4 + trial % 3;
        const int k = local.uniform_int(1, n / 2);
        auto [x, y] = compatible_pair(local, n, k);
        const GeodesicPath path = geodesic_through_to_orthogonal(x, y);
        bool good = path.edge_count() == k;
        good = good && gap_distance(path.vertices().front(), x) <= 1e-9;
        good = good && contains(join(x, y), y, 1e-8);
        double through_y = 1e9;
        for (const auto& v : path.vertices()) {
            through_y = std::min(through_y, gap_distance(v, y));
        }
        good = good && through_y <= 1e-8;
        const Frame& last = path.vertices().back();
        good = good && (x.columns().adjoint() * last.columns()).norm() <= 1e-8;
        for (std::size_t i = 0; i < path.vertices().size() && good; ++i) {
            for (std::size_t j = i + 1; j < path.vertices().size() && good; ++j) {
                good = is_compatible(path.vertices()[i], path.vertices()[j]);
            }
        }
        compat.note(good);
    }
    print(out, "verify/graph/compatible-geodesics", compat, ok);

    out << "verify/graph: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok;
}

bool run_xset(std::ostream& out, std::uint64_t seed) {
    bool ok = true;
    Rng rng(seed);

    Tally orth_full;
    {
        const Frame x(Eigen::Vector2cd(1, 0));
        const Frame y(Eigen::Vector2cd(0, 1));
        for (int i = 0; i < 20; ++i) {
            Rng local = rng.fork(static_cast<std::uint64_t>(i));
            orth_full.note(xset_contains(x, y, random_frame(local, 2, 1), 1e-8));
        }
    }
    print(out, "verify/xset/orthogonal-pair-full-interval", orth_full, ok);

    Tally tags;
    {
        Eigen::MatrixXcd xc(4, 2);
        xc.setZero();
        xc(0, 0) = 1;
        xc(1, 1) = 1;
        Eigen::MatrixXcd yc(4, 2);
        yc.setZero();
        yc(1, 0) = 1;
        yc(2, 1) = 1;
        tags.note(geher_classify(Frame(xc), Frame(yc), 1e-8) ==
                  XSetClass::CompatibleFullInterval);

        const Frame line_x(Eigen::Vector2cd(1, 0));
        const Frame line_mix(Eigen::Vector2cd(M_SQRT1_2, M_SQRT1_2));
        tags.note(geher_classify(line_x, line_mix, 1e-8) ==
                  XSetClass::NonCompatibleAdjacentCurve);

        Eigen::MatrixXcd zc(4, 2);
        zc.setZero();
        zc(0, 0) = M_SQRT1_2;
        zc(2, 0) = M_SQRT1_2;
        zc(1, 1) = M_SQRT1_2;
        zc(3, 1) = M_SQRT1_2;
        tags.note(geher_classify(Frame(xc), Frame(zc), 1e-8) == XSetClass::Other);
    }
    print(out, "verify/xset/geher-classes", tags, ok);

    Tally dims;
    {
        const Frame line_x(Eigen::Vector2cd(1, 0));
        const Frame line_y(Eigen::Vector2cd(0, 1));
        const Frame line_mix(Eigen::Vector2cd(M_SQRT1_2, M_SQRT1_2));
        dims.note(xset_local_dimension(line_x, line_mix, line_x, 1e-8) == 1);
        dims.note(xset_local_dimension(line_x, line_y, line_x, 1e-8) == 2);
        Eigen::MatrixXcd xc(4, 2);
        xc.setZero();
        xc(0, 0) = 1;
        xc(1, 1) = 1;
        Eigen::MatrixXcd yc(4, 2);
        yc.setZero();
        yc(2, 0) = 1;
        yc(3, 1) = 1;
        dims.note(xset_local_dimension(Frame(xc), Frame(yc), Frame(xc), 1e-8) == 8);
    }
    print(out, "verify/xset/local-dimension", dims, ok);

    Tally complement;
    for (int i = 0; i < 10; ++i) {
        Rng local = rng.fork(500 + static_cast<std::uint64_t>(i));
        const Frame x = random_frame(local, 3, 1);
        const Frame y = random_frame(local, 3, 1);
        const XSetSample sample = xset_sample(x, y, 1, local.next_u64(), 1e-8);
        if (sample.points.empty()) {
            complement.note(false);
            continue;
        }
        const Frame& z = sample.points.front();
        const Eigen::MatrixXcd rest = projection_of(x).mat() + projection_of(y).mat() -
                                      projection_of(z).mat();
        const Frame z_prime = image_of_projection(HermitianOperator(0.5 * (rest + rest.adjoint())), 1e-8);
        complement.note(xset_contains(x, y, z_prime, 1e-8) &&
                        xset_contains(y, x, z, 1e-8));
    }
    print(out, "verify/xset/complement-membership", complement, ok);

    out << "verify/xset: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok;
}

bool run_roundtrip(std::ostream& out, std::uint64_t seed) {
    bool ok = true;
    Rng rng(seed);

    struct Combo {
        int n, k, rank_w;
        Sigma sigma;
    };
    const std::vector<Combo> combos = {
        {3, 1, 0, Sigma::Identity},  {3, 2, 1, Sigma::Conjugation},
        {4, 1, 1, Sigma::Identity},  {4, 2, 2, Sigma::Conjugation},
        {4, 3, 0, Sigma::Conjugation}, {5, 2, 1, Sigma::Identity},
    };

    Tally padded;
    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const Combo combo = combos[ci];
        const int m = combo.k + combo.rank_w;
        const int n_prime = combo.n + combo.rank_w + 1;
        const std::uint64_t op_seed = rng.fork(ci).next_u64();
        const GeneratedOperator gen =
            generate_luw(combo.n, n_prime, combo.k, m, combo.sigma, op_seed);
        const Classification c =
            classify_operator(gen.map, combo.k, 40, op_seed ^ 0xF00Du, 1e-6);
        bool good = combo.rank_w == 0
                        ? c.tag == ClassificationTag::IsometryInduced
                        : c.tag == ClassificationTag::WAugmented;
        good = good && c.residual <= 1e-8;
        if (good && combo.rank_w > 0) {
            good = gap_distance(*c.w, *gen.ground_truth_w) <= 1e-7;
        }
        if (good) {
            good = c.u->sigma == combo.sigma;
            Rng probe_rng = rng.fork(ci ^ 0xABCDu);
            good = good &&
                   max_induced_line_gap(*c.u, *gen.ground_truth_u, 30, probe_rng) <= 1e-7;
        }
        if (good) {
            const VerificationReport vr =
                verify_classification(gen.map, c, 30, op_seed ^ 0xBEEFu);
            good = vr.accepted;
        }
        padded.note(good);
    }
    print(out, "verify/roundtrip/padded-isometry", padded, ok);

    Tally half_dim;
    for (int trial = 0; trial < 2; ++trial) {
        const std::uint64_t op_seed = rng.fork(100 + static_cast<std::uint64_t>(trial)).next_u64();
        const GeneratedOperator plain = generate_lu(4, 4, 2, Sigma::Identity, op_seed);
        const Classification cp = classify_operator(plain.map, 2, 40, op_seed ^ 1u, 1e-6);
        half_dim.note(cp.tag == ClassificationTag::IsometryInduced);

        const GeneratedOperator flipped =
            generate_lperp_lu(4, 2, Sigma::Identity, op_seed ^ 2u);
        const Classification cf = classify_operator(flipped.map, 2, 40, op_seed ^ 3u, 1e-6);
        half_dim.note(cf.tag == ClassificationTag::OrthoComplementCase);
    }
    print(out, "verify/roundtrip/half-dimension-branch", half_dim, ok);

    Tally rejected;
    {
        const GeneratedOperator collapse = generate_collapse(3, 1, rng.fork(200).next_u64());
        const Classification c = classify_operator(collapse.map, 1, 40, seed ^ 5u, 1e-6);
        rejected.note(c.tag == ClassificationTag::Rejected &&
                      c.reason.find("L2") != std::string::npos);

        const GeneratedOperator identity = generate_lu(3, 3, 1, Sigma::Identity, 42);
        const Classification ch =
            classify_operator(scale(identity.map, 0.5), 1, 40, seed ^ 6u, 1e-6);
        rejected.note(ch.tag == ClassificationTag::Rejected &&
                      ch.reason.find("L1") != std::string::npos);
    }
    print(out, "verify/roundtrip/rejections", rejected, ok);

    out << "verify/roundtrip: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok;
}

bool run_all(std::ostream& out, std::uint64_t seed) {
    const bool graph = run_graph(out, seed);
    const bool xset = run_xset(out, seed ^ 0x9E3779B9u);
    const bool roundtrip = run_roundtrip(out, seed ^ 0x7F4A7C15u);
    const bool ok = graph && xset && roundtrip;
    out << "verify: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok;
}

}  // namespace wigner::verify
