#include "splitk/gring.hpp"

#include <algorithm>
#include <sstream>

namespace splitk {

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

std::string HLabel::to_string() const {
    switch (kind_) {
        case Kind::Std: return "V" + std::to_string(a_);
        case Kind::BigW: return "W";
        default: return "O" + std::to_string(a_);
    }
}

HLabel HLabel::parse(const std::string& s, long opaque_dim_hint) {
    if (s == "W") return big_w();
    if (s.size() >= 2 && s[0] == 'V') return std_module(std::stol(s.substr(1)));
    if (s.size() >= 2 && s[0] == 'O') return opaque(std::stol(s.substr(1)), opaque_dim_hint);
    throw std::invalid_argument("HLabel::parse: bad label '" + s + "'");
}

RingElement::RingElement(long ell) : ell_(ell) {
    if (!is_odd_prime(ell)) throw std::invalid_argument("RingElement: ell must be an odd prime");
}

RingElement RingElement::one(long ell) { return monomial(ell, box_std(0, 0)); }

RingElement RingElement::monomial(long ell, const BoxLabel& label, Int coeff) {
    RingElement r(ell);
    r.add_term(label, coeff);
    return r;
}

Int RingElement::coeff(const BoxLabel& label) const {
    auto it = terms_.find(label);
    return it == terms_.end() ? Int(0) : it->second;
}

void RingElement::add_term(const BoxLabel& label, const Int& coeff) {
    for (const HLabel* h : {&label.left, &label.right}) {
        if (h->is_std() && (h->index() < 0 || h->index() > ell_))
            throw std::invalid_argument("RingElement: label " + h->to_string() +
                                        " out of range for ell=" + std::to_string(ell_));
        if (h->is_opaque() && h->dimension(ell_) <= 0)
            throw std::invalid_argument("RingElement: opaque label needs a positive dimension");
    }
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(label, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

RingElement RingElement::operator+(const RingElement& o) const {
    internal_check(ell_ == o.ell_, "RingElement: mixed characteristics");
    RingElement r = *this;
    for (const auto& [label, c] : o.terms_) r.add_term(label, c);
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator-() const {
    RingElement r(ell_);
    for (const auto& [label, c] : terms_) r.terms_.emplace(label, -c);
    return r;
}

RingElement RingElement::scaled(const Int& c) const {
    RingElement r(ell_);
    if (c.is_zero()) return r;
    for (const auto& [label, v] : terms_) r.terms_.emplace(label, v * c);
    return r;
}

Int RingElement::dimension() const {
    Int d(0);
    for (const auto& [label, c] : terms_) d += c * Int(label.dimension(ell_));
    return d;
}

std::string RingElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [label, c] : terms_) {
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        first = false;
        Int a = c.sign() < 0 ? -c : c;
        if (a != Int(1)) os << a.to_string() << "*";
        os << "[" << label.left.to_string() << "#" << label.right.to_string() << "]";
    }
    return os.str();
}

std::vector<HLabel> tensor_h(long ell, long i, long j) {
    if (i < 0 || j < 0 || i > ell - 1 || j > ell - 1)
        throw OutOfRangeError("tensor_h: V" + std::to_string(i) + " (x) V" + std::to_string(j) +
                              " has an index outside 0.." + std::to_string(ell - 1));
    if (i + j > ell)
        throw OutOfRangeError("tensor_h: no decomposition rule for V" + std::to_string(i) +
                              " (x) V" + std::to_string(j) + " at ell=" + std::to_string(ell) +
                              " (index sum " + std::to_string(i + j) + " > ell)");
    std::vector<HLabel> out;
    if (i + j <= ell - 1) {
        for (long k = i + j; k >= std::abs(i - j); k -= 2) out.push_back(HLabel::std_module(k));
    } else {
        // i + j = l: one BigW plus the tail V_{l-2k}, k = 2..min(i,j).
        out.push_back(HLabel::big_w());
        long m = std::min(i, j);
        for (long k = 2; k <= m; ++k) out.push_back(HLabel::std_module(ell - 2 * k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

bool is_plain_operand(const HLabel& l, long ell) { return l.is_std() && l.index() <= ell - 1; }

bool is_identity_label(const BoxLabel& b) {
    return b.left.is_std() && b.left.index() == 0 && b.right.is_std() && b.right.index() == 0;
}

}  // namespace

RingElement RingElement::operator*(const RingElement& o) const {
    internal_check(ell_ == o.ell_, "RingElement: mixed characteristics");
    const long ell = ell_;
    // Dense accumulator over plain-label products: Std(0..l-1) in each slot
    // plus BigW. Bookkeeping labels never appear in genuine products.
    const long K = ell + 1;  // Std(0..l-1) -> 0..l-1, BigW -> l
    std::vector<Int> acc(static_cast<size_t>(K) * K);
    std::vector<uint32_t> touched;
    auto code = [&](const HLabel& h) -> long { return h.is_big_w() ? ell : h.index(); };

    RingElement result(ell);
    for (const auto& [la, ca] : terms_) {
        for (const auto& [lb, cb] : o.terms_) {
            if (is_identity_label(lb)) {
                result.add_term(la, ca * cb);
                continue;
            }
            if (is_identity_label(la)) {
                result.add_term(lb, ca * cb);
                continue;
            }
            if (!is_plain_operand(la.left, ell) || !is_plain_operand(la.right, ell) ||
                !is_plain_operand(lb.left, ell) || !is_plain_operand(lb.right, ell))
                throw OutOfRangeError("multiply: label pair [" + la.to_string() + "] * [" +
                                      lb.to_string() +
                                      "] involves a bookkeeping-only label and is not an "
                                      "identity scaling");
            // Componentwise decomposition in each slot.
            std::vector<HLabel> lefts, rights;
            try {
                lefts = tensor_h(ell, la.left.index(), lb.left.index());
                rights = tensor_h(ell, la.right.index(), lb.right.index());
            } catch (const OutOfRangeError& e) {
                throw OutOfRangeError(std::string(e.what()) + " while multiplying [" +
                                      la.to_string() + "] * [" + lb.to_string() + "]");
            }
            Int c = ca * cb;
            for (const auto& hl : lefts) {
                const long cl = code(hl);
                for (const auto& hr : rights) {
                    const size_t idx = static_cast<size_t>(cl) * K + code(hr);
                    if (acc[idx].is_zero()) touched.push_back(static_cast<uint32_t>(idx));
                    acc[idx] += c;
                }
            }
        }
    }
    auto decode = [&](long c) { return c == ell ? HLabel::big_w() : HLabel::std_module(c); };
    for (uint32_t idx : touched) {
        if (acc[idx].is_zero()) continue;
        result.add_term(BoxLabel{decode(idx / K), decode(idx % K)}, acc[idx]);
    }
    // Filtration degrees add across products.
    FiltrationDegree da = filtration_degree(*this), db = filtration_degree(o),
                     dr = filtration_degree(result);
    internal_check(dr.top ? (da.top || db.top) : (da.top || db.top || dr.n <= da.n + db.n),
                   "multiply: product escaped the expected filtration level");
    return result;
}

RingElement sym_power_box(long ell, long n) {
    if (!is_odd_prime(ell)) throw std::invalid_argument("sym_power_box: ell must be an odd prime");
    if (n < 0 || n > ell - 1)
        throw OutOfRangeError("sym_power_box: n=" + std::to_string(n) + " outside 0.." +
                              std::to_string(ell - 1));
    RingElement r(ell);
    for (long i = 0; 2 * i <= n; ++i) r.add_term(box_std(n - 2 * i, n - 2 * i), Int(1));
    return r;
}

RingElement sym_power_with_trivials(long ell, long n, long k) {
    if (n < 0 || n > ell - 1)
        throw OutOfRangeError("sym_power_with_trivials: n=" + std::to_string(n) + " outside 0.." +
                              std::to_string(ell - 1));
    if (k < 0) throw std::invalid_argument("sym_power_with_trivials: k must be >= 0");
    if (k == 0) return sym_power_box(ell, n);
    RingElement r(ell);
    for (long j = 0; j <= n; ++j) {
        Int mult = binomial(n - j + k - 1, k - 1);
        r = r + sym_power_box(ell, j).scaled(mult);
    }
    return r;
}

std::vector<RingElement> lambda_box(long ell) {
    if (ell < 5 || !is_odd_prime(ell))
        throw std::invalid_argument("lambda_box: need an odd prime ell >= 5");
    std::vector<RingElement> c;
    c.push_back(RingElement::one(ell));
    c.push_back(-RingElement::monomial(ell, box_std(1, 1)));
    RingElement q2(ell);
    q2.add_term(box_std(2, 0), Int(1));
    q2.add_term(box_std(0, 2), Int(1));
    c.push_back(q2);
    c.push_back(-RingElement::monomial(ell, box_std(1, 1)));
    c.push_back(RingElement::one(ell));
    return c;
}

bool is_effective(const RingElement& a) {
    for (const auto& [label, c] : a.terms())
        if (c.sign() < 0) return false;
    return true;
}

FiltrationDegree label_filtration_degree(long ell, const BoxLabel& label) {
    auto slot = [&](const HLabel& h) -> FiltrationDegree {
        if (h.is_std()) {
            if (h.index() <= ell - 1) return FiltrationDegree::finite(h.index());
            return FiltrationDegree::top_degree();
        }
        if (h.is_big_w()) return FiltrationDegree::finite(ell);
        return FiltrationDegree::top_degree();
    };
    FiltrationDegree l = slot(label.left), r = slot(label.right);
    if (l.top || r.top) return FiltrationDegree::top_degree();
    return FiltrationDegree::finite(std::max(l.n, r.n));
}

FiltrationDegree filtration_degree(const RingElement& a) {
    FiltrationDegree deg = FiltrationDegree::finite(0);
    for (const auto& [label, c] : a.terms()) {
        FiltrationDegree d = label_filtration_degree(a.ell(), label);
        if (d.top) return d;
        deg.n = std::max(deg.n, d.n);
    }
    return deg;
}

RingElement reduce_mod_filtration(const RingElement& a, long n) {
    if (n > a.ell() - 1)
        throw std::invalid_argument("reduce_mod_filtration: n must be <= ell-1");
    RingElement r(a.ell());
    for (const auto& [label, c] : a.terms()) {
        FiltrationDegree d = label_filtration_degree(a.ell(), label);
        if (!d.top && d.n <= n) continue;
        r.add_term(label, c);
    }
    return r;
}

}  // namespace splitk
