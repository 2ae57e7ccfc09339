#pragma once

#include "cubelab/oracle.hpp"
