#include "sched/rat.hpp"

#include <climits>
#include <ostream>

#include "sched/errors.hpp"

namespace sched {

Rat::Rat(long num, long den) {
    if (den == 0) throw SchedError(Err::ParseError, "zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw SchedError(Err::ParseError, "division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::parse(const std::string& s) {
    auto bad = [&] { return SchedError(Err::ParseError, "bad rational '" + s + "'"); };
    if (s.empty()) throw bad();
    std::string num = s, den = "1";
    if (auto pos = s.find('/'); pos != std::string::npos) {
        num = s.substr(0, pos);
        den = s.substr(pos + 1);
        if (num.empty() || den.empty() || den.find('/') != std::string::npos) throw bad();
    }
    mpz_class n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) throw bad();
    if (sgn(d) <= 0) throw bad();
    mpq_class q(n);
    q /= mpq_class(d);
    return Rat(q);
}

std::string Rat::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long Rat::floor_long() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw SchedError(Err::TooLarge, "floor out of long range");
    return q.get_si();
}

long ceil_div_long(const Rat& num, const Rat& den) {
    if (den.sign() <= 0 || num.sign() < 0)
        throw SchedError(Err::BadRange, "ceil_div_long needs num >= 0, den > 0");
    mpq_class q = num.raw() / den.raw();
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    if (!r.fits_slong_p()) throw SchedError(Err::TooLarge, "ceil out of long range");
    return r.get_si();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

const char* err_name(Err e) {
    switch (e) {
        case Err::ParseError: return "ParseError";
        case Err::NonPositiveLength: return "NonPositiveLength";
        case Err::UnknownJobId: return "UnknownJobId";
        case Err::ClassMismatch: return "ClassMismatch";
        case Err::NotIntervals: return "NotIntervals";
        case Err::TooLarge: return "TooLarge";
        case Err::BadParams: return "BadParams";
        case Err::BadRange: return "BadRange";
        case Err::BadPreset: return "BadPreset";
        case Err::SlotGap: return "SlotGap";
        case Err::PolicyContractViolation: return "PolicyContractViolation";
        case Err::ReleaseInPast: return "ReleaseInPast";
        case Err::StepCapExceeded: return "StepCapExceeded";
        case Err::InstanceMismatch: return "InstanceMismatch";
        case Err::PairingFailure: return "PairingFailure";
        case Err::DegenerateU: return "DegenerateU";
        case Err::UnclassifiableState: return "UnclassifiableState";
    }
    return "SchedError";
}

}  // namespace sched
