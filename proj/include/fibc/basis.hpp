#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "core.hpp"

namespace fibc {

// Left-nested labelling: leaves are all Tau, internal[k] is the charge of
// anyons 1..k+2 fused together, internal.back() is the total charge.
struct FusionTree {
    int n = 0;
    std::vector<Charge> internal;

    // a(1) = Tau, a(k) = internal[k-2]
    Charge a(int k) const { return k == 1 ? Charge::Tau : internal[k - 2]; }
    Charge total() const { return n == 1 ? Charge::Tau : internal.back(); }

    std::string label() const {
        std::string s = "(";
        for (std::size_t k = 0; k < internal.size(); ++k) {
            if (k) s += ',';
            s += internal[k] == Charge::Vacuum ? '1' : 't';
        }
        return s + ")";
    }
};

struct FusionBasis {
    int n = 0;
    Charge sector = Charge::Vacuum;
    std::vector<FusionTree> trees;

    int dim() const { return int(trees.size()); }

    int index_of(const std::vector<Charge>& internal) const {
        auto it = index_.find(internal);
        return it == index_.end() ? -1 : it->second;
    }

    void reindex() {
        index_.clear();
        for (int k = 0; k < dim(); ++k) index_[trees[k].internal] = k;
    }

private:
    std::map<std::vector<Charge>, int> index_;
};

namespace detail {
inline void grow(int n, Charge sector, std::vector<Charge>& cur, Charge last, FusionBasis& out) {
    if (int(cur.size()) == n - 1) {
        if (last == sector) out.trees.push_back({n, cur});
        return;
    }
    // Vacuum < Tau keeps the output lexicographic.
    for (Charge c : fuse(last, Charge::Tau)) {
        cur.push_back(c);
        grow(n, sector, cur, c, out);
        cur.pop_back();
    }
}
}  // namespace detail

inline FusionBasis enumerate_basis(int n, Charge sector) {
    if (n < 1) throw InvalidInput("enumerate_basis: n must be >= 1");
    FusionBasis b;
    b.n = n;
    b.sector = sector;
    std::vector<Charge> cur;
    detail::grow(n, sector, cur, Charge::Tau, b);
    b.reindex();
    return b;
}

// sigma_i on the left-nested basis. sigma_1 is diagonal in a(2); for i > 1
// the exchange only touches a(i), with neighbours a(i-1), a(i+1) fixed.
inline Mat braid_generator(const FusionBasis& basis, int i, Handedness h = Handedness::Right) {
    if (i < 1 || i > basis.n - 1) throw InvalidInput("braid_generator: index out of range");
    const ModelConstants mc = model_constants(h);
    const int d = basis.dim();
    Mat g = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const FusionTree& t = basis.trees[k];
        if (i == 1) {
            g(k, k) = mc.r(t.a(2));
            continue;
        }
        const Charge l = t.a(i - 1), m = t.a(i), r = t.a(i + 1);
        if (l == Charge::Vacuum) {
            g(k, k) = mc.r(r);
        } else if (r == Charge::Vacuum) {
            g(k, k) = mc.r(Charge::Tau);
        } else {
            for (Charge c : {Charge::Vacuum, Charge::Tau}) {
                std::vector<Charge> lab = t.internal;
                lab[i - 2] = c;
                const int row = basis.index_of(lab);
                if (row < 0) continue;
                cd v = 0;
                for (Charge x : {Charge::Vacuum, Charge::Tau})
                    v += mc.f_matrix(int(c), int(x)) * mc.r(x) * mc.f_matrix(int(x), int(m));
                g(row, k) = v;
            }
        }
    }
    return g;
}

// Row-compressed generator: at most two entries per row.
struct SparseGen {
    std::vector<std::array<int, 2>> col;
    std::vector<std::array<cd, 2>> val;
    std::vector<int> nnz;

    explicit SparseGen(const Mat& g) : col(g.rows()), val(g.rows()), nnz(g.rows(), 0) {
        for (int r = 0; r < g.rows(); ++r)
            for (int c = 0; c < g.cols(); ++c)
                if (std::abs(g(r, c)) > 0.0) {
                    if (nnz[r] == 2) throw std::logic_error("generator row with more than two entries");
                    col[r][nnz[r]] = c;
                    val[r][nnz[r]] = g(r, c);
                    ++nnz[r];
                }
    }

    // u <- g^{+-1} u ; the generators are symmetric, so g^{-1} = conj(g).
    void apply_left(Mat& u, int sign, Mat& scratch) const {
        scratch.resize(u.rows(), u.cols());
        for (int r = 0; r < u.rows(); ++r) {
            if (nnz[r] == 1) {
                cd v = sign > 0 ? val[r][0] : std::conj(val[r][0]);
                scratch.row(r) = v * u.row(col[r][0]);
            } else {
                cd v0 = sign > 0 ? val[r][0] : std::conj(val[r][0]);
                cd v1 = sign > 0 ? val[r][1] : std::conj(val[r][1]);
                scratch.row(r) = v0 * u.row(col[r][0]) + v1 * u.row(col[r][1]);
            }
        }
        u.swap(scratch);
    }
};

struct GeneratorSet {
    FusionBasis basis;
    Handedness handedness;
    std::vector<Mat> dense;        // dense[i-1] = sigma_i
    std::vector<SparseGen> sparse;

    const Mat& operator[](int i) const { return dense.at(i - 1); }
    int dim() const { return basis.dim(); }
};

inline std::shared_ptr<const GeneratorSet> generators(int n, Charge sector, Handedness h) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const GeneratorSet>> cache;
    const auto key = std::make_tuple(n, int(sector), int(h));
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto gs = std::make_shared<GeneratorSet>();
    gs->basis = enumerate_basis(n, sector);
    gs->handedness = h;
    for (int i = 1; i < n; ++i) {
        gs->dense.push_back(braid_generator(gs->basis, i, h));
        gs->sparse.emplace_back(gs->dense.back());
    }
    cache.emplace(key, gs);
    return gs;
}

}  // namespace fibc
