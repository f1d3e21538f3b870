namespace adtchoice {}
