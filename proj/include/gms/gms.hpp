#ifndef GMS_GMS_HPP
#define GMS_GMS_HPP

#include "gms/bytes.hpp"
#include "gms/chunk.hpp"
#include "gms/codec.hpp"
#include "gms/csv.hpp"
#include "gms/diff.hpp"
#include "gms/error.hpp"
#include "gms/example_scene.hpp"
#include "gms/scene.hpp"
#include "gms/signal.hpp"

#endif  // GMS_GMS_HPP
