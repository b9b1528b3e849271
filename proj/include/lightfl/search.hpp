#pragma once

#include <cmath>
#include <stdexcept>

namespace lightfl::search {

// Golden-section minimization of a unimodal f over [a, b].
// Uses the textbook update a1 = a + rho (b-a), b1 = a + (1-rho)(b-a) with
// rho = (3 - sqrt(5)) / 2, keeping [a, b1] when f(a1) <= f(b1) and [a1, b]
// otherwise, until the bracket is narrower than tol. Ties resolve to the
// smaller abscissa. The observer sees every bracket, for invariant tests.
template <class Scalar, class F, class Observer>
Scalar golden_section_min(F&& f, Scalar a, Scalar b, Scalar tol, Observer&& observe) {
    if (!(b >= a)) throw std::invalid_argument("golden_section_min: b < a");
    if (!(tol > Scalar(0))) throw std::invalid_argument("golden_section_min: tol must be > 0");
    static const Scalar rho = (Scalar(3) - std::sqrt(Scalar(5))) / Scalar(2);
    observe(a, b);
    while (b - a > tol) {
        const Scalar width = b - a;
        const Scalar lo = a + rho * width;
        const Scalar hi = a + (Scalar(1) - rho) * width;
        if (f(lo) <= f(hi))
            b = hi;
        else
            a = lo;
        observe(a, b);
        if (!(b - a < width)) break; // bracket no longer shrinks at fp resolution
    }
    return f(a) <= f(b) ? a : b;
}

template <class Scalar, class F>
Scalar golden_section_min(F&& f, Scalar a, Scalar b, Scalar tol) {
    return golden_section_min(static_cast<F&&>(f), a, b, tol, [](Scalar, Scalar) {});
}

// Smallest x in [lo, hi] satisfying a monotone predicate, to within tol.
// Requires pred(hi); pred(lo) may or may not hold (if it does, returns ~lo).
template <class Scalar, class Pred>
Scalar bisect_least(Pred&& pred, Scalar lo, Scalar hi, Scalar tol) {
    if (!(hi >= lo)) throw std::invalid_argument("bisect_least: hi < lo");
    if (!pred(hi)) throw std::invalid_argument("bisect_least: predicate must hold at hi");
    while (hi - lo > tol) {
        const Scalar mid = lo + (hi - lo) / Scalar(2);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace lightfl::search
