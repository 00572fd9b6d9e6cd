#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "qfiso/local/rho_local.hpp"
#include "qfiso/padic/decide.hpp"
#include "qfiso/padic/sampler.hpp"
#include "qfiso/support/parallel.hpp"

namespace qfiso::padic {

struct LocalMcResult {
    int n = 0;
    unsigned long p = 0;
    std::uint64_t samples = 0;
    std::uint64_t isotropic = 0;
    std::uint64_t indeterminate = 0;
    /// isotropic / decided samples
    double estimate = 0;
    /// sqrt(q (1 - q) / samples)
    double stderr_ = 0;
    Rational exact;
    double z_score = 0;
};

/// Decides one sampled form, extending its digits until the answer no longer
/// depends on the unknown tail or max_digits is reached.
inline Verdict decide_lazy(LazyPadicForm& form, long initial_digits = 6) {
    long k = std::min(initial_digits, form.max_digits());
    for (;;) {
        DecideOptions opt;
        opt.want_witness = false;
        opt.precision = k;
        const Decision d = decide_isotropic_recursive(form.truncation(k), form.p(), opt);
        if (d.verdict != Verdict::Indeterminate || k >= form.max_digits()) return d.verdict;
        k = std::min(2 * k, form.max_digits());
    }
}

/// Estimates rho_n(p) from `samples` Haar-random forms; sample i uses the key
/// stream_key(seed, {i}), so the result does not depend on `threads`.
inline LocalMcResult estimate_rho_local_mc(int n, unsigned long p, std::uint64_t samples, std::uint64_t seed,
                                           long max_digits = 64, unsigned threads = 1) {
    local::check_variable_count(n);
    detail::require_prime(p);
    if (samples < 1) throw Error("samples must be at least 1");
    struct Counts {
        std::uint64_t iso = 0, indet = 0;
    };
    const auto blocks = parallel_blocks(samples, threads, [&](std::uint64_t begin, std::uint64_t end) {
        Counts c;
        for (std::uint64_t i = begin; i < end; ++i) {
            LazyPadicForm form(n, p, stream_key(seed, {i}), max_digits);
            const Verdict v = decide_lazy(form);
            if (v == Verdict::Isotropic) ++c.iso;
            if (v == Verdict::Indeterminate) ++c.indet;
        }
        return c;
    });
    LocalMcResult r;
    r.n = n;
    r.p = p;
    r.samples = samples;
    for (const auto& b : blocks) {
        r.isotropic += b.iso;
        r.indeterminate += b.indet;
    }
    const std::uint64_t decided = samples - r.indeterminate;
    r.estimate = decided ? static_cast<double>(r.isotropic) / static_cast<double>(decided) : 0.0;
    r.stderr_ = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(samples));
    r.exact = local::rho_local_closed(n).eval(Integer(p));
    const double diff = r.estimate - r.exact.get_d();
    if (r.stderr_ > 0)
        r.z_score = diff / r.stderr_;
    else
        r.z_score = diff == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    return r;
}

}  // namespace qfiso::padic
