#include "qtop/complex.hpp"

#include <algorithm>

namespace qtop {

int SimplicialComplex::index_of(int d, const std::vector<int>& s) const {
    if (d < 0 || d > top_dim) return -1;
    const auto& list = simp[d];
    auto it = std::lower_bound(list.begin(), list.end(), s);
    if (it == list.end() || *it != s) return -1;
    return static_cast<int>(it - list.begin());
}

int SimplicialComplex::euler_characteristic() const {
    int chi = 0;
    for (int d = 0; d <= top_dim; ++d) chi += (d % 2 == 0 ? 1 : -1) * count(d);
    return chi;
}

SimplicialComplex SimplicialComplex::from_cells(std::vector<std::vector<int>> cells) {
    SimplicialComplex cx;
    for (auto& c : cells) {
        std::sort(c.begin(), c.end());
        require(std::adjacent_find(c.begin(), c.end()) == c.end(), ErrKind::Internal,
                "degenerate cell with repeated vertex");
        cx.top_dim = std::max(cx.top_dim, static_cast<int>(c.size()) - 1);
    }
    if (cx.top_dim < 0) return cx;
    cx.simp.assign(cx.top_dim + 1, {});
    for (auto& c : cells) cx.simp[c.size() - 1].push_back(std::move(c));
    // closure: every face of a d-simplex joins dimension d-1
    for (int d = cx.top_dim; d >= 1; --d) {
        auto& lower = cx.simp[d - 1];
        for (const auto& s : cx.simp[d])
            for (size_t omit = 0; omit < s.size(); ++omit) {
                std::vector<int> f;
                f.reserve(s.size() - 1);
                for (size_t t = 0; t < s.size(); ++t)
                    if (t != omit) f.push_back(s[t]);
                lower.push_back(std::move(f));
            }
        std::sort(lower.begin(), lower.end());
        lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
    }
    for (auto& list : cx.simp) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return cx;
}

bool SubMask::empty() const {
    for (const auto& v : in)
        for (uint8_t b : v)
            if (b) return false;
    return true;
}

int SubMask::count(int d) const {
    if (d < 0 || d >= static_cast<int>(in.size())) return 0;
    int c = 0;
    for (uint8_t b : in[d]) c += b ? 1 : 0;
    return c;
}

SubMask SubMask::full_subcomplex(const SimplicialComplex& cx, const std::vector<uint8_t>& vin) {
    SubMask m;
    m.in.resize(cx.top_dim + 1);
    for (int d = 0; d <= cx.top_dim; ++d) {
        m.in[d].assign(cx.count(d), 0);
        for (int i = 0; i < cx.count(d); ++i) {
            bool all = true;
            for (int v : cx.cell(d, i))
                if (!vin[v]) { all = false; break; }
            m.in[d][i] = all ? 1 : 0;
        }
    }
    return m;
}

SubMask SubMask::none(const SimplicialComplex& cx) {
    SubMask m;
    m.in.resize(std::max(cx.top_dim + 1, 0));
    for (int d = 0; d <= cx.top_dim; ++d) m.in[d].assign(cx.count(d), 0);
    return m;
}

bool SubMask::subset_of(const SubMask& other) const {
    for (size_t d = 0; d < in.size(); ++d)
        for (size_t i = 0; i < in[d].size(); ++i)
            if (in[d][i] && !(d < other.in.size() && other.in[d][i])) return false;
    return true;
}

SubMask SubMask::unite(const SubMask& other) const {
    SubMask m = *this;
    for (size_t d = 0; d < m.in.size() && d < other.in.size(); ++d)
        for (size_t i = 0; i < m.in[d].size(); ++i)
            if (other.in[d][i]) m.in[d][i] = 1;
    return m;
}

}  // namespace qtop
