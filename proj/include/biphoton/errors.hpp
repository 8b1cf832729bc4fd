#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy. Everything derives from biphoton::Error so callers can
// catch the whole family, or a specific condition when they can act on it.

namespace biphoton {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// kinematics
class EmptyGroup : public Error { using Error::Error; };
class SpacelikeTotal : public Error { using Error::Error; };
class MassExceedsEnergy : public Error { using Error::Error; };
class SuperluminalBoost : public Error { using Error::Error; };
class MasslessGroup : public Error { using Error::Error; };

// quadrature
class NonConvergence : public Error { using Error::Error; };
class MissingCutoff : public Error { using Error::Error; };

// discretized kernels / widths / Schmidt number
class GridTooCoarse : public Error { using Error::Error; };
class WidthHitsBoundary : public Error { using Error::Error; };
class NotConverged : public Error { using Error::Error; };
class NonNormalizable : public Error { using Error::Error; };

// configuration
class ConfigInvalid : public Error { using Error::Error; };

} // namespace biphoton
