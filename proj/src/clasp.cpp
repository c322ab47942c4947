#include "a2spider/clasp.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace a2 {

using njson = nlohmann::ordered_json;

Morphism layer(const SignSeq& left, const Morphism& m, const SignSeq& right) {
    return Morphism::identity(left).tensor(m).tensor(Morphism::identity(right));
}

Morphism pinch(char sign) {
    if (sign == '+')
        return Morphism::generator(Gen::t_pp_m).then(Morphism::generator(Gen::t_m_pp));
    return Morphism::generator(Gen::t_mm_p).then(Morphism::generator(Gen::t_p_mm));
}

// ---------------------------------------------------------------------------
// Cache

namespace {

struct Cache {
    std::mutex mu;
    std::unordered_map<std::string, Morphism> map;
    bool get(const std::string& k, Morphism& out) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = map.find(k);
        if (it == map.end()) return false;
        out = it->second;
        return true;
    }
    void put(const std::string& k, const Morphism& m) {
        std::lock_guard<std::mutex> lock(mu);
        map.emplace(k, m);
    }
};

Cache& cache() {
    static Cache c;
    return c;
}

SignSeq rep(char sign, long n) { return SignSeq::repeat(sign, static_cast<size_t>(n)); }

// Nested caps +^i -^i -> empty (or -^i +^i -> empty), innermost pair first.
Morphism nested_caps(char first, long i) {
    char second = first == '+' ? '-' : '+';
    Gen cap = first == '+' ? Gen::d_pm : Gen::d_mp;
    Morphism m = Morphism::identity(rep(first, i) + rep(second, i));
    for (long j = i; j >= 1; --j)
        m = m.then(layer(rep(first, j - 1), Morphism::generator(cap), rep(second, j - 1)));
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Clasps

Morphism clasp_single(char sign, long k) {
    if (k < 0) throw std::domain_error("clasp_single: negative size");
    if (k == 0) return Morphism::identity(SignSeq(""));
    std::string key = std::string("S:") + sign + ":" + std::to_string(k);
    Morphism m;
    if (cache().get(key, m)) return m;
    if (k == 1) {
        m = Morphism::identity(rep(sign, 1));
    } else {
        Morphism prev = clasp_single(sign, k - 1);
        Morphism side = prev.tensor(Morphism::identity(rep(sign, 1)));
        Morphism mid = layer(rep(sign, k - 2), pinch(sign), SignSeq(""));
        m = side - side.then(mid).then(side).scaled(qint(k - 1) / qint(k));
    }
    cache().put(key, m);
    return m;
}

Morphism clasp_double(DoubleOrder order, long k, long l) {
    if (k < 0 || l < 0) throw std::domain_error("clasp_double: negative size");
    char a = order == DoubleOrder::PlusThenMinus ? '+' : '-';
    char b = order == DoubleOrder::PlusThenMinus ? '-' : '+';
    if (l == 0) return clasp_single(a, k);
    if (k == 0) return clasp_single(b, l);
    std::string key = std::string("D:") + a + ":" + std::to_string(k) + ":" + std::to_string(l);
    Morphism m;
    if (cache().get(key, m)) return m;

    Morphism box = clasp_single(a, k).tensor(clasp_single(b, l));
    m = Morphism::zero(box.dom(), box.cod());
    long imax = std::min(k, l);
    for (long i = 0; i <= imax; ++i) {
        Scalar coeff = qbinom(k, i) * qbinom(l, i) / qbinom(k + l + 1, i);
        if (i % 2 == 1) coeff = -coeff;
        if (i == 0) {
            m = m + box.scaled(coeff);
            continue;
        }
        Morphism caps = nested_caps(a, i);
        Morphism turnback = layer(rep(a, k - i), caps, rep(b, l - i))
                                .then(layer(rep(a, k - i), caps.star(), rep(b, l - i)));
        m = m + box.then(turnback).then(box).scaled(coeff);
    }
    cache().put(key, m);
    return m;
}

Morphism sigma_web(const SignSeq& eps) {
    long k = static_cast<long>(eps.count('+'));
    long l = static_cast<long>(eps.count('-'));
    std::string cur = rep('+', k).str() + rep('-', l).str();
    Morphism m = Morphism::identity(SignSeq(cur));
    Morphism h = Morphism::generator(Gen::h_pm_mp);
    for (;;) {
        size_t idx = 0;
        while (idx < cur.size() && cur[idx] == eps.at(idx)) ++idx;
        if (idx == cur.size()) break;
        size_t j = idx;
        while (cur[j] != '-') ++j;
        for (size_t p = j; p > idx; --p) {
            m = m.then(layer(SignSeq(cur.substr(0, p - 1)), h,
                             SignSeq(cur.substr(p + 1))));
            std::swap(cur[p - 1], cur[p]);
        }
    }
    return m;
}

Morphism clasp_into(const SignSeq& eps) {
    std::string key = "I:" + eps.str();
    Morphism m;
    if (cache().get(key, m)) return m;
    long k = static_cast<long>(eps.count('+'));
    long l = static_cast<long>(eps.count('-'));
    m = clasp_double(DoubleOrder::PlusThenMinus, k, l).then(sigma_web(eps));
    cache().put(key, m);
    return m;
}

Morphism clasp_endo(const SignSeq& eps) {
    std::string key = "E:" + eps.str();
    Morphism m;
    if (cache().get(key, m)) return m;
    Morphism in = clasp_into(eps);
    m = in.star().then(in);
    cache().put(key, m);
    return m;
}

Morphism transition(const SignSeq& alpha, const SignSeq& beta) {
    if (alpha.count('+') != beta.count('+') || alpha.count('-') != beta.count('-'))
        throw std::invalid_argument("transition requires equal sign counts");
    std::string key = "T:" + alpha.str() + ":" + beta.str();
    Morphism m;
    if (cache().get(key, m)) return m;
    m = clasp_into(alpha).star().then(clasp_into(beta));
    cache().put(key, m);
    return m;
}

// ---------------------------------------------------------------------------
// Expansion identities

Morphism single_clasp_expansion(long k) {
    if (k < 1) throw std::domain_error("single_clasp_expansion: k >= 1");
    SignSeq one = rep('+', 1);
    Morphism base = layer(one, clasp_single('+', k - 1), SignSeq(""));
    Morphism m = Morphism::zero(base.dom(), base.cod());
    for (long j = 0; j <= k - 1; ++j) {
        Morphism chain = Morphism::identity(one);
        for (long p = 1; p <= j; ++p)
            chain = chain.tensor(Morphism::identity(one));
        for (long p = 1; p <= j; ++p)
            chain = chain.then(layer(rep('+', p - 1), pinch('+'), rep('+', j - p)));
        Morphism term = base.then(layer(SignSeq(""), chain, rep('+', k - 1 - j)));
        Scalar c = qint(k - j) / qint(k);
        if (j % 2 == 1) c = -c;
        m = m + term.scaled(c);
    }
    return m;
}

Morphism turnback_stack(long k, long i, long l) {
    if (k < 1 || l < 1 || i < 1 || i > k + 1)
        throw std::domain_error("turnback_stack: need k,l >= 1 and 1 <= i <= k+1");
    Morphism cups = nested_caps('+', i).star();  // empty -> +^i -^i
    Morphism b = layer(rep('+', k + 2 - i), cups, rep('-', l - 1));
    Morphism c = layer(rep('+', 1), clasp_single('+', k + 1), rep('-', i + l - 1));
    Morphism d = layer(SignSeq(""), Morphism::generator(Gen::t_pp_m),
                       rep('+', k) + rep('-', i + l - 1));
    Morphism e = layer(rep('-', 1), clasp_double(DoubleOrder::PlusThenMinus, k, i + l - 1),
                       SignSeq(""));
    return b.then(c).then(d).then(e);
}

Morphism turnback_stack_rhs(long k, long l) {
    SignSeq alpha = rep('-', 1) + rep('+', k) + rep('-', l - 1);
    SignSeq beta = rep('+', k) + rep('-', l);
    Morphism first = Morphism::generator(Gen::t_p_mm)
                         .tensor(clasp_double(DoubleOrder::PlusThenMinus, k, l - 1));
    return first.then(layer(rep('-', 1), transition(alpha, beta), SignSeq("")));
}

Morphism double_clasp_peel_rhs(long k, long l) {
    if (k < 1 || l < 1) throw std::domain_error("double_clasp_peel_rhs: k,l >= 1");
    SignSeq one = rep('+', 1);
    Morphism p = clasp_double(DoubleOrder::PlusThenMinus, k, l);
    Morphism one_p = layer(one, p, SignSeq(""));
    Morphism s1 =
        one_p.then(layer(SignSeq(""), pinch('+'), rep('+', k - 1) + rep('-', l))).then(one_p);
    SignSeq mixed = rep('-', 1) + rep('+', k) + rep('-', l - 1);
    SignSeq sorted = rep('+', k) + rep('-', l);
    Morphism t1 = transition(sorted, mixed), t2 = transition(mixed, sorted);
    SignSeq rest = rep('+', k) + rep('-', l - 1);
    Morphism s2 = layer(one, t1, SignSeq(""))
                      .then(layer(SignSeq(""), Morphism::generator(Gen::d_pm), rest))
                      .then(layer(SignSeq(""), Morphism::generator(Gen::b_pm), rest))
                      .then(layer(one, t2, SignSeq("")));
    return one_p - s1.scaled(qint(k) / qint(k + 1)) -
           s2.scaled(qint(l) / (qint(k + 1) * qint(k + l + 2)));
}

Morphism clasp_wrap_lhs(long k, long l) {
    if (k < 1 || l < 1) throw std::domain_error("clasp_wrap: k,l >= 1");
    SignSeq rest = rep('+', k) + rep('-', l - 1);
    SignSeq mixed = rep('-', 1) + rest;
    SignSeq sorted = rep('+', k) + rep('-', l);
    return clasp_double(DoubleOrder::PlusThenMinus, k, l - 1)
        .then(layer(SignSeq(""), Morphism::generator(Gen::b_pm), rest))
        .then(layer(rep('+', 1), transition(mixed, sorted), SignSeq("")))
        .then(layer(SignSeq(""), Morphism::generator(Gen::t_pp_m),
                    rep('+', k - 1) + rep('-', l)))
        .then(layer(rep('-', 1), clasp_double(DoubleOrder::PlusThenMinus, k - 1, l),
                    SignSeq("")));
}

Morphism clasp_wrap_rhs(long k, long l) {
    if (k < 1 || l < 1) throw std::domain_error("clasp_wrap: k,l >= 1");
    SignSeq small = rep('+', k - 1) + rep('-', l - 1);
    SignSeq mixed = rep('-', 1) + small;
    SignSeq target = rep('+', k - 1) + rep('-', l);
    return clasp_double(DoubleOrder::PlusThenMinus, k, l - 1)
        .then(layer(SignSeq(""), Morphism::generator(Gen::t_p_mm), small))
        .then(layer(rep('-', 1), transition(mixed, target), SignSeq("")));
}

Scalar clasp_wrap_scalar(long k, long l) {
    return (qint(k + 1) / qint(k)) *
           (Scalar(1) - qint(l + 1) / (qint(k + 1) * qint(k + l + 1)));
}

// ---------------------------------------------------------------------------
// Verification report

bool ClaspReport::all_pass() const {
    for (auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ClaspReport::to_json(int indent) const {
    njson j;
    j["eps"] = eps.str();
    j["pass"] = all_pass();
    njson arr = njson::array();
    for (auto& c : checks) {
        njson jc;
        jc["check"] = c.name;
        jc["pass"] = c.pass;
        if (!c.pass) jc["residual"] = njson::parse(c.residual.to_json());
        arr.push_back(jc);
    }
    j["checks"] = arr;
    return indent >= 0 ? j.dump(indent) : j.dump();
}

namespace {

void check_equal(ClaspReport& rep, const std::string& name, const Morphism& got,
                 const Morphism& want) {
    Morphism residual = got - want;
    rep.checks.push_back({name, residual.is_zero(), residual});
}

void check_zero(ClaspReport& rep, const std::string& name, const Morphism& got) {
    rep.checks.push_back({name, got.is_zero(), got});
}

// Contiguous block with at most one sign change, i.e. of shape s^a t^b.
bool simple_block(const SignSeq& eps, size_t from, size_t len) {
    int changes = 0;
    for (size_t i = 1; i < len; ++i)
        if (eps.at(from + i) != eps.at(from + i - 1)) ++changes;
    return changes <= 1;
}

}  // namespace

ClaspReport verify_clasp(const SignSeq& eps) {
    ClaspReport rep;
    rep.eps = eps;
    Morphism p = clasp_endo(eps);

    check_equal(rep, "idempotent", p.then(p), p);
    {
        Scalar c = p.coefficient_of(make_identity(eps));
        Morphism diff = Morphism::zero(eps, eps);
        if (c != Scalar(1)) diff = Morphism::identity(eps).scaled(c - Scalar(1));
        rep.checks.push_back({"identity coefficient = 1", c == Scalar(1), diff});
    }

    for (size_t from = 0; from < eps.size(); ++from) {
        for (size_t len = 1; from + len <= eps.size(); ++len) {
            if (!simple_block(eps, from, len)) continue;
            SignSeq left = eps.slice(0, from);
            SignSeq block = eps.slice(from, len);
            SignSeq right = eps.slice(from + len, eps.size() - from - len);
            Morphism inner = layer(left, clasp_endo(block), right);
            std::string where = "[" + std::to_string(from) + ".." +
                                std::to_string(from + len) + ")";
            check_equal(rep, "absorb below " + where, inner.then(p), p);
            check_equal(rep, "absorb above " + where, p.then(inner), p);
        }
    }

    for (size_t i = 0; i + 1 < eps.size(); ++i) {
        char a = eps.at(i), b = eps.at(i + 1);
        SignSeq left = eps.slice(0, i);
        SignSeq right = eps.slice(i + 2, eps.size() - i - 2);
        Gen top = a == '+' ? (b == '+' ? Gen::t_pp_m : Gen::d_pm)
                           : (b == '-' ? Gen::t_mm_p : Gen::d_mp);
        Gen bot = a == '+' ? (b == '+' ? Gen::t_m_pp : Gen::b_pm)
                           : (b == '-' ? Gen::t_p_mm : Gen::b_mp);
        std::string at = " at " + std::to_string(i);
        check_zero(rep, "kill above" + at,
                   p.then(layer(left, Morphism::generator(top), right)));
        check_zero(rep, "kill below" + at,
                   layer(left, Morphism::generator(bot), right).then(p));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cache maintenance and persistence

size_t clasp_cache_size() {
    std::lock_guard<std::mutex> lock(cache().mu);
    return cache().map.size();
}

void clear_clasp_cache() {
    std::lock_guard<std::mutex> lock(cache().mu);
    cache().map.clear();
}

static const char* kCacheFile = "a2spider_clasps.json";

bool load_clasp_cache(const std::string& dir) {
    std::ifstream in(std::filesystem::path(dir) / kCacheFile);
    if (!in) return false;
    njson j;
    try {
        in >> j;
        std::lock_guard<std::mutex> lock(cache().mu);
        for (auto& e : j.at("entries"))
            cache().map.emplace(e.at("key").get<std::string>(),
                                Morphism::from_json(e.at("morphism").dump()));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

bool save_clasp_cache(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    njson entries = njson::array();
    {
        std::lock_guard<std::mutex> lock(cache().mu);
        for (auto& [k, m] : cache().map) {
            njson e;
            e["key"] = k;
            e["morphism"] = njson::parse(m.to_json());
            entries.push_back(e);
        }
    }
    njson j;
    j["entries"] = entries;
    std::ofstream out(std::filesystem::path(dir) / kCacheFile);
    if (!out) return false;
    out << j.dump();
    return static_cast<bool>(out);
}

}  // namespace a2
