#pragma once

#include <stdexcept>
#include <string>

namespace ztmesh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define ZTMESH_DEFINE_ERROR(Name)                 \
    struct Name : Error {                         \
        using Error::Error;                       \
        Name() : Error(#Name) {}                  \
    }

ZTMESH_DEFINE_ERROR(InvalidPublicKey);
ZTMESH_DEFINE_ERROR(AuthenticationFailure);
ZTMESH_DEFINE_ERROR(DuplicateId);
ZTMESH_DEFINE_ERROR(DimensionMismatch);
ZTMESH_DEFINE_ERROR(LengthMismatch);
ZTMESH_DEFINE_ERROR(EmptyInput);
ZTMESH_DEFINE_ERROR(NotNormalized);
ZTMESH_DEFINE_ERROR(ShapeMismatch);
ZTMESH_DEFINE_ERROR(IndexOutOfRange);
ZTMESH_DEFINE_ERROR(NonFiniteGradient);
ZTMESH_DEFINE_ERROR(PastEvent);
ZTMESH_DEFINE_ERROR(NotNeighbors);
ZTMESH_DEFINE_ERROR(UnbalancedScope);
ZTMESH_DEFINE_ERROR(MissingInput);
ZTMESH_DEFINE_ERROR(MalformedMessage);
ZTMESH_DEFINE_ERROR(ChannelFailure);
ZTMESH_DEFINE_ERROR(ConfigError);

#undef ZTMESH_DEFINE_ERROR

}  // namespace ztmesh
