	public void addListener(O obj) {
		runCheck(obj);
		Listeners.add(obj.getListener());
	}


	public void runCheck(O obj) {
		notNull(obj);
		validate(obj);
	}
}
