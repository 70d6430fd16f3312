#include <algorithm>
#include <cmath>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "pathtrack/polysys/system.hpp"

namespace pathtrack {

SupportedSystem::SupportedSystem(Support support, std::vector<Complex<double>> coeffs)
    : support_(std::move(support)), coeffs_(std::move(coeffs))
{
    const auto n = static_cast<std::size_t>(support_.dimension());
    const auto m = support_.size();
    if (m == 0) {
        throw std::invalid_argument("support must hold at least one monomial");
    }
    if (coeffs_.size() != n * m) {
        throw std::invalid_argument("coefficient matrix must be n-by-m");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = row(static_cast<int>(i));
        const bool nonzero = std::any_of(r.begin(), r.end(), [](const Complex<double>& c) {
            return c.re != 0.0 || c.im != 0.0;
        });
        if (!nonzero) {
            throw std::invalid_argument("polynomial " + std::to_string(i + 1) + " has only zero coefficients");
        }
    }
}

bool operator==(const SupportedSystem& a, const SupportedSystem& b)
{
    return a.support_ == b.support_ &&
           same_bits(std::span<const Complex<double>>(a.coeffs_), std::span<const Complex<double>>(b.coeffs_));
}

namespace {

// Portable samplers over mt19937_64 output (the standard distributions are
// implementation-defined, which would break cross-platform seeds).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

double uniform_unit(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1p-53;
}

Complex<double> uniform_disk(std::mt19937_64& rng)
{
    for (;;) {
        const double re = 2.0 * uniform_unit(rng) - 1.0;
        const double im = 2.0 * uniform_unit(rng) - 1.0;
        const double r2 = re * re + im * im;
        if (r2 < 1.0 && r2 > 0.0) {
            return {re, im};
        }
    }
}

// First `count` entries of a partial Fisher-Yates shuffle of [first, first+size).
std::vector<int> sample_distinct(std::mt19937_64& rng, int first, int size, int count)
{
    std::vector<int> pool(static_cast<std::size_t>(size));
    std::iota(pool.begin(), pool.end(), first);
    for (int i = 0; i < count; ++i) {
        const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(size - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(count));
    std::sort(pool.begin(), pool.end());
    return pool;
}

// binomial(a, b) saturated at `cap`
std::uint64_t binomial_capped(std::uint64_t a, std::uint64_t b, std::uint64_t cap)
{
    b = std::min(b, a - b);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r = r * (a - b + i) / i;
        if (r >= cap) {
            return cap;
        }
    }
    return static_cast<std::uint64_t>(r);
}

ExponentVector sample_monomial(std::mt19937_64& rng, int n, int lo, int hi)
{
    const int d = lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
    const int k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(std::min(d, n))));
    const auto vars = sample_distinct(rng, 0, n, k);
    // k-1 cut points in 1..d-1 give a composition of d into k positive parts
    auto cuts = sample_distinct(rng, 1, d - 1, k - 1);
    cuts.insert(cuts.begin(), 0);
    cuts.push_back(d);
    std::vector<VarPower> factors;
    factors.reserve(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) {
        factors.push_back({vars[static_cast<std::size_t>(s)],
                           cuts[static_cast<std::size_t>(s) + 1] - cuts[static_cast<std::size_t>(s)]});
    }
    return ExponentVector(std::move(factors), n);
}

} // namespace

std::pair<int, int> degree_window(const SystemSpec& spec)
{
    if (spec.avg_degree == 0) {
        return {1, spec.max_degree};
    }
    const int w = std::min(spec.avg_degree - 1, spec.max_degree - spec.avg_degree);
    return {spec.avg_degree - w, spec.avg_degree + w};
}

SupportedSystem generate_system(const SystemSpec& spec)
{
    if (spec.n < 1 || spec.m < 1 || spec.max_degree < 1) {
        throw std::invalid_argument("system spec needs n >= 1, m >= 1 and max degree >= 1");
    }
    if (spec.avg_degree < 0 || spec.avg_degree > spec.max_degree) {
        throw std::invalid_argument("average degree must lie in [1, max degree] (0 for the default)");
    }
    const auto [lo, hi] = degree_window(spec);

    // monomials of total degree in [lo, hi]: C(n+hi, n) - C(n+lo-1, n)
    const std::uint64_t cap = std::uint64_t{1} << 62;
    const auto n = static_cast<std::uint64_t>(spec.n);
    const std::uint64_t upto_hi = binomial_capped(n + static_cast<std::uint64_t>(hi), n, cap);
    const std::uint64_t below_lo = binomial_capped(n + static_cast<std::uint64_t>(lo - 1), n, cap);
    if (upto_hi < cap && upto_hi - below_lo < static_cast<std::uint64_t>(spec.m)) {
        throw std::invalid_argument("cannot draw " + std::to_string(spec.m) + " distinct monomials: only " +
                                    std::to_string(upto_hi - below_lo) + " exist in the degree range");
    }

    std::mt19937_64 rng(spec.seed);
    std::set<ExponentVector> seen;
    std::vector<ExponentVector> monomials;
    monomials.reserve(static_cast<std::size_t>(spec.m));
    while (monomials.size() < static_cast<std::size_t>(spec.m)) {
        auto e = sample_monomial(rng, spec.n, lo, hi);
        if (seen.insert(e).second) {
            monomials.push_back(std::move(e));
        }
    }

    std::vector<Complex<double>> coeffs(static_cast<std::size_t>(spec.n) * static_cast<std::size_t>(spec.m));
    for (auto& c : coeffs) {
        c = uniform_disk(rng);
    }
    return SupportedSystem(Support(spec.n, std::move(monomials)), std::move(coeffs));
}

std::vector<Complex<double>> random_point(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Complex<double>> z(static_cast<std::size_t>(n));
    for (auto& c : z) {
        c = uniform_disk(rng);
    }
    return z;
}

std::vector<Complex<double>> random_unit_point(int n, std::uint64_t seed)
{
    auto z = random_point(n, seed);
    for (auto& c : z) {
        const double r = std::hypot(c.re, c.im); // nonzero: uniform_disk excludes the origin
        c = {c.re / r, c.im / r};
    }
    return z;
}

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace {

void put_real(std::ostream& out, double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    out.write(buf, res.ptr - buf);
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // next non-blank line split into tokens
    std::vector<std::string_view> next(const char* expecting)
    {
        while (std::getline(in_, text_)) {
            ++line_;
            tokens_.clear();
            std::size_t pos = 0;
            while (pos < text_.size()) {
                while (pos < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos]))) {
                    ++pos;
                }
                const std::size_t start = pos;
                while (pos < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos]))) {
                    ++pos;
                }
                if (pos > start) {
                    tokens_.emplace_back(text_.data() + start, pos - start);
                }
            }
            if (!tokens_.empty()) {
                return tokens_;
            }
        }
        throw ParseError(line_ + 1, std::string("unexpected end of file, expecting ") + expecting);
    }

    int line() const noexcept { return line_; }

    template <typename T>
    T number(std::string_view token) const
    {
        T value{};
        const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
            throw ParseError(line_, "malformed number '" + std::string(token) + "'");
        }
        return value;
    }

private:
    std::istream& in_;
    std::string text_;
    std::vector<std::string_view> tokens_;
    int line_ = 0;
};

} // namespace

void write_system(const SupportedSystem& sys, std::ostream& out)
{
    const int n = sys.dimension();
    const std::size_t m = sys.monomial_count();
    out << n << ' ' << m << '\n';
    for (const auto& e : sys.support().monomials()) {
        out << e.size();
        for (const auto& f : e.factors()) {
            out << ' ' << f.var + 1 << ' ' << f.exponent;
        }
        out << '\n';
    }
    for (int i = 0; i < n; ++i) {
        bool first = true;
        for (const auto& c : sys.row(i)) {
            if (!first) {
                out << ' ';
            }
            first = false;
            put_real(out, c.re);
            out << ' ';
            put_real(out, c.im);
        }
        out << '\n';
    }
}

void write_system(const SupportedSystem& sys, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    write_system(sys, out);
    if (!out) {
        throw std::runtime_error("error writing " + path.string());
    }
}

SupportedSystem read_system(std::istream& in)
{
    LineReader reader(in);
    auto header = reader.next("header 'n m'");
    if (header.size() != 2) {
        throw ParseError(reader.line(), "header must be 'n m'");
    }
    const int n = reader.number<int>(header[0]);
    const int m = reader.number<int>(header[1]);
    if (n < 1 || m < 1) {
        throw ParseError(reader.line(), "dimension and monomial count must be positive");
    }

    std::vector<ExponentVector> monomials;
    std::set<ExponentVector> seen;
    for (int j = 0; j < m; ++j) {
        const auto tokens = reader.next("a support line");
        const int k = reader.number<int>(tokens[0]);
        if (k < 0 || tokens.size() != static_cast<std::size_t>(2 * k + 1)) {
            throw ParseError(reader.line(), "support line must be 'k i1 a1 ... ik ak'");
        }
        std::vector<VarPower> factors;
        for (int s = 0; s < k; ++s) {
            factors.push_back({reader.number<int>(tokens[static_cast<std::size_t>(2 * s + 1)]) - 1,
                               reader.number<int>(tokens[static_cast<std::size_t>(2 * s + 2)])});
        }
        try {
            ExponentVector e(std::move(factors), n);
            if (!seen.insert(e).second) {
                throw std::invalid_argument("duplicate monomial in support");
            }
            monomials.push_back(std::move(e));
        } catch (const std::invalid_argument& err) {
            throw ParseError(reader.line(), err.what());
        }
    }

    std::vector<Complex<double>> coeffs;
    coeffs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(m));
    for (int i = 0; i < n; ++i) {
        const auto tokens = reader.next("a coefficient line");
        if (tokens.size() != static_cast<std::size_t>(2 * m)) {
            throw ParseError(reader.line(), "coefficient line must hold " + std::to_string(m) + " 're im' pairs");
        }
        for (int j = 0; j < m; ++j) {
            coeffs.emplace_back(reader.number<double>(tokens[static_cast<std::size_t>(2 * j)]),
                                reader.number<double>(tokens[static_cast<std::size_t>(2 * j + 1)]));
        }
        const bool nonzero = std::any_of(coeffs.end() - m, coeffs.end(), [](const Complex<double>& c) {
            return c.re != 0.0 || c.im != 0.0;
        });
        if (!nonzero) {
            throw ParseError(reader.line(), "polynomial has only zero coefficients");
        }
    }
    return SupportedSystem(Support(n, std::move(monomials)), std::move(coeffs));
}

SupportedSystem read_system(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return read_system(in);
}

} // namespace pathtrack
