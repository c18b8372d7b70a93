#ifndef GHOM_VERDICT_HPP
#define GHOM_VERDICT_HPP

namespace ghom {

/// Outcome of a bounded positive-cone search. Positive and Negative are only
/// reported with a witness; Unknown means the budget ran out.
enum class Verdict { Positive, Negative, Zero, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::Negative: return "negative";
    case Verdict::Zero: return "zero";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace ghom

#endif
