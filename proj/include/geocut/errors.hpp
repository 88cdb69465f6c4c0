#pragma once

#include <stdexcept>
#include <string>

namespace geocut {

/// Base class for all geocut errors.
struct GeocutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A constructor or operation received a value violating a type invariant.
struct InvalidArgument : GeocutError {
  using GeocutError::GeocutError;
};

/// A point lies outside the model rectangle (or another required domain).
struct OutOfDomain : GeocutError {
  using GeocutError::GeocutError;
};

/// Tangent construction requested from a point on or inside the closed disk.
struct SourceInsideDisk : GeocutError {
  using GeocutError::GeocutError;
};

/// Shadow membership queried for a point on or inside the closed disk.
struct PointInsideDisk : GeocutError {
  using GeocutError::GeocutError;
};

/// The admissible-center rectangle Rec_r is empty for the requested radius.
struct DegenerateRec : GeocutError {
  using GeocutError::GeocutError;
};

/// The accuracy budget would require a grid beyond the configured point budget.
struct InfeasibleBudget : GeocutError {
  using GeocutError::GeocutError;
};

/// The expected node count of a realization exceeds the sampling budget.
struct ExpectedCountOverflow : GeocutError {
  using GeocutError::GeocutError;
};

/// An attack density does not integrate to one over the admissible region.
struct UnnormalizedDensity : GeocutError {
  using GeocutError::GeocutError;
};

/// A file failed to parse; the message carries line/column context.
struct ParseError : GeocutError {
  using GeocutError::GeocutError;
};

/// A raster cell holds a negative value that is not the no-data marker.
struct NegativeIntensity : GeocutError {
  using GeocutError::GeocutError;
};

/// A raster body ended before nCols*nRows values were read.
struct MissingValues : GeocutError {
  using GeocutError::GeocutError;
};

/// A file could not be opened, read, or written.
struct IoError : GeocutError {
  using GeocutError::GeocutError;
};

}  // namespace geocut
