#include "acyclica/combinat.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace acyclica::combi {

int64_t binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    k = std::min(k, n - k);
    int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

size_t monomial_count(int nvars, int d) {
    if (d < 0) return 0;
    if (nvars == 0) return d == 0 ? 1 : 0;
    return (size_t)binomial(d + nvars - 1, d);
}

namespace {

void gen_monomials(int nvars, int d, Expo& cur, std::vector<Expo>& out) {
    if ((int)cur.size() == nvars - 1) {
        cur.push_back(d);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int e = d; e >= 0; --e) {
        cur.push_back(e);
        gen_monomials(nvars, d - e, cur, out);
        cur.pop_back();
    }
}

std::mutex cache_mu;

} // namespace

const std::vector<Expo>& monomials(int nvars, int d) {
    static std::map<std::pair<int, int>, std::vector<Expo>> cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto key = std::make_pair(nvars, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Expo> out;
    if (d >= 0 && nvars > 0) {
        Expo cur;
        gen_monomials(nvars, d, cur, out);
    } else if (d == 0 && nvars == 0) {
        out.push_back({});
    }
    return cache.emplace(key, std::move(out)).first->second;
}

size_t monomial_index(const Expo& e) {
    int d = 0;
    for (int x : e) d += x;
    const auto& list = monomials((int)e.size(), d);
    auto it = std::lower_bound(list.begin(), list.end(), e,
                               [](const Expo& a, const Expo& b) { return a > b; });
    if (it == list.end() || *it != e) throw std::logic_error("monomial not in basis");
    return (size_t)(it - list.begin());
}

const std::vector<std::vector<int>>& subsets_colex(int n, int k) {
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(cache_mu);
    auto key = std::make_pair(n, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (k >= 0 && k <= n) {
        std::vector<int> t(k);
        for (int i = 0; i < k; ++i) t[i] = i;
        while (true) {
            out.push_back(t);
            int i = 0;
            while (i < k && (i + 1 < k ? t[i] + 1 == t[i + 1] : t[i] + 1 == n)) ++i;
            if (i == k) break;
            ++t[i];
            for (int j = 0; j < i; ++j) t[j] = j;
        }
    }
    return cache.emplace(key, std::move(out)).first->second;
}

size_t subset_index(int n, const std::vector<int>& t) {
    const auto& list = subsets_colex(n, (int)t.size());
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == t) return i;
    throw std::logic_error("subset not in basis");
}

int64_t split_coefficient(const Expo& u, const Expo& w) {
    int64_t c = 1;
    for (size_t i = 0; i < u.size(); ++i) c *= binomial(u[i], w[i]);
    return c;
}

std::string monomial_label(const Expo& e) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << "x" << (i + 1);
        if (e[i] > 1) os << "^" << e[i];
        first = false;
    }
    return first ? "1" : os.str();
}

std::string subset_label(const std::vector<int>& t) {
    std::ostringstream os;
    os << "e{";
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ",";
        os << t[i] + 1;
    }
    os << "}";
    return os.str();
}

} // namespace acyclica::combi
