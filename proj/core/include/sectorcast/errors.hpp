#pragma once

#include <stdexcept>
#include <string>

namespace sectorcast {

// Base of all library errors. Two broad families map onto CLI exit codes:
// InputError -> 2 (bad data or configuration), NumericError -> 3
// (rank deficiency, degenerate samples and similar numerical failures).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// dataset
class MissingColumn : public InputError { public: using InputError::InputError; };
class UnparseableValue : public InputError { public: using InputError::InputError; };
class NonFiniteValue : public InputError { public: using InputError::InputError; };
class DuplicateWeek : public InputError { public: using InputError::InputError; };
class EmptyInput : public InputError { public: using InputError::InputError; };
class LengthMismatch : public InputError { public: using InputError::InputError; };
class DatasetTooSmall : public InputError { public: using InputError::InputError; };
class ZeroMarketVariance : public NumericError { public: using NumericError::NumericError; };
class ZeroDenominator : public NumericError { public: using NumericError::NumericError; };
class ConstantColumn : public NumericError { public: using NumericError::NumericError; };

// johnson
class OutOfSupport : public InputError { public: using InputError::InputError; };
class SampleTooSmall : public InputError { public: using InputError::InputError; };
class DegenerateSample : public NumericError { public: using NumericError::NumericError; };
class NoValidFit : public NumericError { public: using NumericError::NumericError; };

// regress / select
class RankDeficient : public NumericError { public: using NumericError::NumericError; };
class InsufficientObservations : public InputError { public: using InputError::InputError; };
class UnfittableStart : public InputError { public: using InputError::InputError; };

// diagnose
class SampleSizeOutOfRange : public InputError { public: using InputError::InputError; };

// validate
class ZeroObserved : public InputError { public: using InputError::InputError; };
class ZeroPredictedNorm : public NumericError { public: using NumericError::NumericError; };
class ZeroTotalVariance : public NumericError { public: using NumericError::NumericError; };
class DegreesOfFreedomExhausted : public InputError { public: using InputError::InputError; };
class FoldTooSmall : public InputError { public: using InputError::InputError; };

// refmodel / cli
class NonFiniteInput : public InputError { public: using InputError::InputError; };

} // namespace sectorcast
