#pragma once

#include "iotak/complex.hpp"
#include "iotak/gf2.hpp"
#include "iotak/homotopy.hpp"
#include "iotak/invariants.hpp"
#include "iotak/io.hpp"
#include "iotak/iota.hpp"
#include "iotak/local_equivalence.hpp"
#include "iotak/matrix.hpp"
#include "iotak/models.hpp"
#include "iotak/ring.hpp"
#include "iotak/tower.hpp"
