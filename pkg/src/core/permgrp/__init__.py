# This file makes core.permgrp a package
