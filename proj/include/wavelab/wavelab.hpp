#pragma once

#include "wavelab/attacks/bitflip.hpp"
#include "wavelab/attacks/brute_force.hpp"
#include "wavelab/attacks/evil_twin.hpp"
#include "wavelab/attacks/fms.hpp"
#include "wavelab/attacks/hidden_ssid.hpp"
#include "wavelab/attacks/inductive.hpp"
#include "wavelab/attacks/keystream_dictionary.hpp"
#include "wavelab/attacks/mac_spoof.hpp"
#include "wavelab/attacks/replay.hpp"
#include "wavelab/attacks/shared_key.hpp"
#include "wavelab/capture.hpp"
#include "wavelab/detect.hpp"
#include "wavelab/frames.hpp"
#include "wavelab/oracle.hpp"
#include "wavelab/rogue.hpp"
#include "wavelab/scenario.hpp"
#include "wavelab/shipped.hpp"
#include "wavelab/simnet.hpp"
#include "wavelab/survey.hpp"
#include "wavelab/wepcrypt.hpp"
